#pragma once

#include <complex>

#include <Eigen/Dense>

#include "demonsim/errors.hpp"

namespace demonsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTolerance = 1e-10;

// Max-entry norm of U^dag U - I.
double unitarity_defect(const ComplexMatrix& m);

// Square matrix validated to be unitary at construction, so every consumer
// can rely on column orthonormality without re-checking.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix entries);

    static UnitaryMatrix identity(int dim);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& entries() const { return entries_; }
    Complex operator()(int row, int col) const { return entries_(row, col); }

private:
    ComplexMatrix entries_;
};

// Mean absolute-amplitude overlap (1/M) sum_kj |T_kj| |A_kj|; equals 1 when
// the moduli agree entry by entry, regardless of phases.
double amplitude_fidelity(const UnitaryMatrix& target, const UnitaryMatrix& actual);

// Places `inner` on the mode block [offset, offset + inner.dim()) of a
// total_dim-mode identity.
UnitaryMatrix embed_unitary(const UnitaryMatrix& inner, int total_dim, int mode_offset);

// Transformation applying `first` and then `second`, i.e. second * first.
UnitaryMatrix compose(const UnitaryMatrix& first, const UnitaryMatrix& second);

} // namespace demonsim
