#pragma once

#include <map>
#include <mutex>
#include <span>

#include <boost/rational.hpp>

#include "demonsim/matrix.hpp"
#include "demonsim/partitions.hpp"

namespace demonsim {

using Rational = boost::rational<long long>;

// Exact unitary-group Weingarten function for degree-d moments over U(R):
//   Wg(sigma) = (1/d!) sum_lambda dim_lambda * chi^lambda(sigma) / s_lambda(R)
// with s_lambda(R) the shifted content product; partitions with more than R
// rows are skipped because their s_lambda(R) vanishes. Requires R >= d so
// that every retained denominator is non-zero.
Rational weingarten_exact(const Partition& sigma_cycle_type, int R, int d);

// Memoized per-(R, d) table of Weingarten values keyed by cycle type.
class WeingartenCache {
public:
    WeingartenCache(int unitary_dim, int degree);

    int unitary_dim() const { return dim_; }
    int degree() const { return degree_; }

    Rational exact_value(const Partition& sigma_cycle_type);
    double value(const Partition& sigma_cycle_type);

    // Fills the table for every cycle type of S_degree.
    void precompute();

private:
    int dim_ = 0;
    int degree_ = 0;
    std::map<Partition, Rational> table_;
    std::mutex mutex_;
};

double weingarten(const Partition& sigma_cycle_type, int R, int d, WeingartenCache& cache);

// Ensemble average of prod_k U_{r_k c_k} * prod_k conj(U_{r'_k c'_k}) over
// Haar-random U in U(R); the four index lists share one length d <= R.
Complex haar_moment(std::span<const int> rows, std::span<const int> rows_conj,
                    std::span<const int> cols, std::span<const int> cols_conj, int R);

} // namespace demonsim
