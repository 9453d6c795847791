#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "demonsim/errors.hpp"

namespace demonsim {

// Integer partition: weakly decreasing positive parts. The empty partition
// (degree 0) is allowed; it labels the trivial representation of S_0 and the
// identity cycle type of an empty permutation.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int degree() const;
    int rows() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }
    int part(int index) const { return parts_[static_cast<std::size_t>(index)]; }

    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

// All partitions of d, largest first part first: d=3 gives (3), (2,1), (1,1,1).
std::vector<Partition> enumerate_partitions(int d);

// prod over cells (i,j) of (R + j - i), rows and columns counted from 0.
// Vanishes exactly when the partition has more than R rows.
long long shifted_content_product(const Partition& lambda, int R);

// Irreducible dimension chi^lambda(id) by the hook length formula.
long long hook_length_dimension(const Partition& lambda);

// Number of permutations in S_d with the given cycle type, d!/z_mu.
long long conjugacy_class_size(const Partition& cycle_type);

long long factorial(int n);
long long binomial(int n, int k);

// Permutations are stored one-line: sigma[i] is the image of i, 0-based.
using Permutation = std::vector<int>;

Partition cycle_type(const Permutation& sigma);
Permutation inverse_permutation(const Permutation& sigma);
Permutation compose_permutations(const Permutation& outer, const Permutation& inner);

// All of S_d in lexicographic one-line order.
std::vector<Permutation> all_permutations(int d);

} // namespace demonsim
