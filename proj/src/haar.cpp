#include "demonsim/haar.hpp"

#include "demonsim/errors.hpp"

namespace demonsim {

UnitaryMatrix sample_haar(int dim, RandomSeed seed) {
    if (dim <= 0) {
        throw DimensionError("sample_haar requires a positive dimension");
    }
    RandomStream stream(seed);
    ComplexMatrix ginibre(dim, dim);
    for (int row = 0; row < dim; ++row) {
        for (int col = 0; col < dim; ++col) {
            const double re = stream.gaussian();
            const double im = stream.gaussian();
            ginibre(row, col) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int col = 0; col < dim; ++col) {
        const Complex diag = r(col, col);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(col) *= diag / mag;
        }
    }
    return UnitaryMatrix(std::move(q));
}

std::vector<UnitaryMatrix> sample_haar_ensemble(int dim, std::size_t count, RandomSeed seed) {
    std::vector<UnitaryMatrix> ensemble;
    ensemble.reserve(count);
    for (std::size_t index = 0; index < count; ++index) {
        ensemble.push_back(sample_haar(dim, seed.substream(index)));
    }
    return ensemble;
}

} // namespace demonsim
