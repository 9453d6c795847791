#include "demonsim/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace demonsim {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) {
            throw DimensionError("partition parts must be positive");
        }
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw DimensionError("partition parts must be weakly decreasing");
        }
    }
}

int Partition::degree() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

namespace {

void extend_partitions(int remaining, int cap, std::vector<int>& prefix,
                       std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int part = std::min(cap, remaining); part >= 1; --part) {
        prefix.push_back(part);
        extend_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Partition> enumerate_partitions(int d) {
    if (d < 0) {
        throw DimensionError("cannot partition a negative integer");
    }
    std::vector<Partition> out;
    std::vector<int> prefix;
    extend_partitions(d, d, prefix, out);
    return out;
}

long long shifted_content_product(const Partition& lambda, int R) {
    long long product = 1;
    for (int row = 0; row < lambda.rows(); ++row) {
        for (int col = 0; col < lambda.part(row); ++col) {
            product *= static_cast<long long>(R) + col - row;
        }
    }
    return product;
}

long long factorial(int n) {
    if (n < 0) {
        throw DimensionError("factorial of a negative integer");
    }
    if (n > 20) {
        throw SizeError("factorial overflows 64 bits beyond 20!");
    }
    long long value = 1;
    for (int k = 2; k <= n; ++k) {
        value *= k;
    }
    return value;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    long long value = 1;
    for (int i = 1; i <= k; ++i) {
        value = value * (n - k + i) / i;
    }
    return value;
}

long long hook_length_dimension(const Partition& lambda) {
    // Column heights, so the hook of cell (i, j) is arm + leg + 1.
    std::vector<int> column_height;
    if (lambda.rows() > 0) {
        column_height.assign(static_cast<std::size_t>(lambda.part(0)), 0);
        for (int row = 0; row < lambda.rows(); ++row) {
            for (int col = 0; col < lambda.part(row); ++col) {
                ++column_height[static_cast<std::size_t>(col)];
            }
        }
    }
    // d! / prod(hooks), divided incrementally to stay in 64 bits.
    long long numerator = 1;
    long long denominator = 1;
    int next = 1;
    for (int row = 0; row < lambda.rows(); ++row) {
        for (int col = 0; col < lambda.part(row); ++col) {
            const int arm = lambda.part(row) - col - 1;
            const int leg = column_height[static_cast<std::size_t>(col)] - row - 1;
            numerator *= next++;
            denominator *= arm + leg + 1;
            const long long g = std::gcd(numerator, denominator);
            numerator /= g;
            denominator /= g;
        }
    }
    return numerator / denominator;
}

long long conjugacy_class_size(const Partition& cycle_type) {
    // z_mu = prod_k k^{m_k} m_k! with m_k the multiplicity of part k.
    long long centralizer = 1;
    int run_length = 0;
    const auto& parts = cycle_type.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        centralizer *= parts[i];
        run_length = (i > 0 && parts[i] == parts[i - 1]) ? run_length + 1 : 1;
        centralizer *= run_length;
    }
    return factorial(cycle_type.degree()) / centralizer;
}

Partition cycle_type(const Permutation& sigma) {
    const int d = static_cast<int>(sigma.size());
    std::vector<bool> seen(sigma.size(), false);
    std::vector<int> lengths;
    for (int start = 0; start < d; ++start) {
        if (seen[static_cast<std::size_t>(start)]) {
            continue;
        }
        int length = 0;
        int cursor = start;
        while (!seen[static_cast<std::size_t>(cursor)]) {
            seen[static_cast<std::size_t>(cursor)] = true;
            cursor = sigma[static_cast<std::size_t>(cursor)];
            ++length;
        }
        lengths.push_back(length);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return Partition(std::move(lengths));
}

Permutation inverse_permutation(const Permutation& sigma) {
    Permutation inverse(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        inverse[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
    }
    return inverse;
}

Permutation compose_permutations(const Permutation& outer, const Permutation& inner) {
    Permutation result(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) {
        result[i] = outer[static_cast<std::size_t>(inner[i])];
    }
    return result;
}

std::vector<Permutation> all_permutations(int d) {
    if (d < 0) {
        throw DimensionError("permutation degree must be non-negative");
    }
    Permutation identity(static_cast<std::size_t>(d));
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(factorial(std::min(d, 20))));
    Permutation current = identity;
    do {
        out.push_back(current);
    } while (std::next_permutation(current.begin(), current.end()));
    return out;
}

} // namespace demonsim
