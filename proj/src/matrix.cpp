#include "demonsim/matrix.hpp"

#include <string>
#include <utility>

namespace demonsim {

double unitarity_defect(const ComplexMatrix& m) {
    const ComplexMatrix gram = m.adjoint() * m;
    const ComplexMatrix identity = ComplexMatrix::Identity(m.rows(), m.cols());
    return (gram - identity).cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw DimensionError("unitary matrix must be square and non-empty");
    }
    const double defect = unitarity_defect(entries_);
    if (!(defect <= kUnitarityTolerance)) {
        throw NumericalError("matrix is not unitary: defect " + std::to_string(defect));
    }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
    return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

double amplitude_fidelity(const UnitaryMatrix& target, const UnitaryMatrix& actual) {
    if (target.dim() != actual.dim()) {
        throw DimensionError("amplitude_fidelity requires matching dimensions");
    }
    const int m = target.dim();
    double total = 0.0;
    for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col) {
            total += std::abs(target(row, col)) * std::abs(actual(row, col));
        }
    }
    return total / static_cast<double>(m);
}

UnitaryMatrix embed_unitary(const UnitaryMatrix& inner, int total_dim, int mode_offset) {
    if (mode_offset < 0 || total_dim < inner.dim() || mode_offset + inner.dim() > total_dim) {
        throw DimensionError("embedding block does not fit the requested dimension");
    }
    ComplexMatrix entries = ComplexMatrix::Identity(total_dim, total_dim);
    entries.block(mode_offset, mode_offset, inner.dim(), inner.dim()) = inner.entries();
    return UnitaryMatrix(std::move(entries));
}

UnitaryMatrix compose(const UnitaryMatrix& first, const UnitaryMatrix& second) {
    if (first.dim() != second.dim()) {
        throw DimensionError("compose requires matching dimensions");
    }
    return UnitaryMatrix(second.entries() * first.entries());
}

} // namespace demonsim
