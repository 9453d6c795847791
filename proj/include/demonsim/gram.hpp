#pragma once

#include "demonsim/matrix.hpp"

namespace demonsim {

inline constexpr double kGramHermitianTolerance = 1e-10;
inline constexpr double kGramSpectrumTolerance = 1e-10;

// Pairwise overlaps <psi_j | psi_k> of the photons' internal states. Valid
// models are Hermitian with unit diagonal and positive semidefinite, which
// construction enforces (eigenvalues may dip to -1e-10 to absorb rounding).
class DistinguishabilityModel {
public:
    explicit DistinguishabilityModel(ComplexMatrix gram);

    // All overlaps 1: photons are identical in every internal degree.
    static DistinguishabilityModel indistinguishable(int photons);
    // Identity Gram: photons are fully distinguishable.
    static DistinguishabilityModel distinguishable(int photons);
    // Real overlap x between every distinct pair; PSD for -1/(n-1) <= x <= 1.
    static DistinguishabilityModel uniform_overlap(int photons, double overlap);

    int photons() const { return static_cast<int>(gram_.rows()); }
    const ComplexMatrix& gram() const { return gram_; }
    Complex overlap(int j, int k) const { return gram_(j, k); }

private:
    ComplexMatrix gram_;
};

} // namespace demonsim
