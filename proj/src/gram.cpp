#include "demonsim/gram.hpp"

#include <string>
#include <utility>

namespace demonsim {

DistinguishabilityModel::DistinguishabilityModel(ComplexMatrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() == 0 || gram_.rows() != gram_.cols()) {
        throw DimensionError("Gram matrix must be square and non-empty");
    }
    const double hermitian_defect = (gram_ - gram_.adjoint()).cwiseAbs().maxCoeff();
    if (hermitian_defect > kGramHermitianTolerance) {
        throw NumericalError("Gram matrix is not Hermitian");
    }
    for (int j = 0; j < gram_.rows(); ++j) {
        if (std::abs(gram_(j, j) - Complex(1.0, 0.0)) > kGramHermitianTolerance) {
            throw NumericalError("Gram matrix diagonal must be 1");
        }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram_, Eigen::EigenvaluesOnly);
    const double lowest = solver.eigenvalues().minCoeff();
    if (lowest < -kGramSpectrumTolerance) {
        throw NumericalError("Gram matrix is not positive semidefinite: eigenvalue " +
                             std::to_string(lowest));
    }
}

DistinguishabilityModel DistinguishabilityModel::indistinguishable(int photons) {
    return DistinguishabilityModel(ComplexMatrix::Ones(photons, photons));
}

DistinguishabilityModel DistinguishabilityModel::distinguishable(int photons) {
    return DistinguishabilityModel(ComplexMatrix::Identity(photons, photons));
}

DistinguishabilityModel DistinguishabilityModel::uniform_overlap(int photons, double overlap) {
    ComplexMatrix gram = ComplexMatrix::Constant(photons, photons, Complex(overlap, 0.0));
    gram.diagonal().setConstant(Complex(1.0, 0.0));
    return DistinguishabilityModel(std::move(gram));
}

} // namespace demonsim
