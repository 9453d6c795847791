#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "demonsim/errors.hpp"

namespace demonsim {

// Ryser's formula with Gray-code subset updates, O(2^n n):
//   perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} A_ij.
// Each step toggles one column in the running row sums.
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) {
        throw DimensionError("permanent requires a square matrix");
    }
    const int n = static_cast<int>(a.rows());
    if (n == 0) {
        return Scalar(1);
    }
    if (n > 30) {
        throw SizeError("permanent limited to 30x30");
    }
    std::vector<Scalar> row_sums(static_cast<std::size_t>(n), Scalar(0));
    Scalar total(0);
    std::uint64_t gray = 0;
    int subset_sign = 1;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const std::uint64_t next_gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ next_gray;
        const int col = std::countr_zero(flipped);
        if (next_gray & flipped) {
            for (int row = 0; row < n; ++row) {
                row_sums[static_cast<std::size_t>(row)] += a(row, col);
            }
        } else {
            for (int row = 0; row < n; ++row) {
                row_sums[static_cast<std::size_t>(row)] -= a(row, col);
            }
        }
        gray = next_gray;
        subset_sign = -subset_sign;
        Scalar product(1);
        for (int row = 0; row < n; ++row) {
            product *= row_sums[static_cast<std::size_t>(row)];
        }
        total += (subset_sign < 0) ? -product : product;
    }
    return (n % 2 == 0) ? total : -total;
}

} // namespace demonsim
