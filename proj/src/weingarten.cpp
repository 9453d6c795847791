#include "demonsim/weingarten.hpp"

#include "demonsim/characters.hpp"

namespace demonsim {

Rational weingarten_exact(const Partition& sigma_cycle_type, int R, int d) {
    if (sigma_cycle_type.degree() != d) {
        throw DimensionError("cycle type does not partition the moment degree");
    }
    if (R < d) {
        throw DimensionError("weingarten requires unitary dimension >= moment degree");
    }
    Rational total(0);
    for (const Partition& lambda : enumerate_partitions(d)) {
        if (lambda.rows() > R) {
            continue;
        }
        const long long content = shifted_content_product(lambda, R);
        const long long dim = hook_length_dimension(lambda);
        const long long chi = character(lambda, sigma_cycle_type);
        total += Rational(dim * chi, content);
    }
    return total / factorial(d);
}

WeingartenCache::WeingartenCache(int unitary_dim, int degree)
    : dim_(unitary_dim), degree_(degree) {
    if (degree < 0 || unitary_dim < degree) {
        throw DimensionError("weingarten cache requires unitary dimension >= degree >= 0");
    }
}

Rational WeingartenCache::exact_value(const Partition& sigma_cycle_type) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto it = table_.find(sigma_cycle_type);
        if (it != table_.end()) {
            return it->second;
        }
    }
    const Rational value = weingarten_exact(sigma_cycle_type, dim_, degree_);
    std::lock_guard<std::mutex> lock(mutex_);
    table_.emplace(sigma_cycle_type, value);
    return value;
}

double WeingartenCache::value(const Partition& sigma_cycle_type) {
    return boost::rational_cast<double>(exact_value(sigma_cycle_type));
}

void WeingartenCache::precompute() {
    for (const Partition& type : enumerate_partitions(degree_)) {
        (void)exact_value(type);
    }
}

double weingarten(const Partition& sigma_cycle_type, int R, int d, WeingartenCache& cache) {
    if (cache.unitary_dim() != R || cache.degree() != d) {
        throw DimensionError("weingarten cache was built for different parameters");
    }
    return cache.value(sigma_cycle_type);
}

Complex haar_moment(std::span<const int> rows, std::span<const int> rows_conj,
                    std::span<const int> cols, std::span<const int> cols_conj, int R) {
    const std::size_t d = rows.size();
    if (rows_conj.size() != d || cols.size() != d || cols_conj.size() != d) {
        throw DimensionError("haar_moment index lists must share one length");
    }
    if (static_cast<int>(d) > R) {
        throw DimensionError("haar_moment requires unitary dimension >= degree");
    }
    if (d > 8) {
        throw SizeError("haar_moment enumerates (d!)^2 pairings; degree > 8 unsupported");
    }
    for (std::size_t k = 0; k < d; ++k) {
        const bool in_range = rows[k] >= 0 && rows[k] < R && rows_conj[k] >= 0 && rows_conj[k] < R &&
                              cols[k] >= 0 && cols[k] < R && cols_conj[k] >= 0 && cols_conj[k] < R;
        if (!in_range) {
            throw DimensionError("haar_moment index out of range");
        }
    }
    if (d == 0) {
        return Complex(1.0, 0.0);
    }
    // <prod U_{r c} prod conj(U_{r' c'})> = sum over pairings sigma, tau of
    // delta_{r, r' o sigma} delta_{c, c' o tau} Wg(tau sigma^{-1}).
    WeingartenCache cache(R, static_cast<int>(d));
    const auto perms = all_permutations(static_cast<int>(d));
    Rational total(0);
    for (const Permutation& sigma : perms) {
        bool rows_match = true;
        for (std::size_t k = 0; k < d; ++k) {
            if (rows[k] != rows_conj[static_cast<std::size_t>(sigma[k])]) {
                rows_match = false;
                break;
            }
        }
        if (!rows_match) {
            continue;
        }
        const Permutation sigma_inverse = inverse_permutation(sigma);
        for (const Permutation& tau : perms) {
            bool cols_match = true;
            for (std::size_t k = 0; k < d; ++k) {
                if (cols[k] != cols_conj[static_cast<std::size_t>(tau[k])]) {
                    cols_match = false;
                    break;
                }
            }
            if (!cols_match) {
                continue;
            }
            total += cache.exact_value(cycle_type(compose_permutations(tau, sigma_inverse)));
        }
    }
    return Complex(boost::rational_cast<double>(total), 0.0);
}

} // namespace demonsim
