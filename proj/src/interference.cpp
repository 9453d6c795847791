#include "demonsim/interference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "demonsim/partitions.hpp"
#include "demonsim/permanent.hpp"

namespace demonsim {

namespace {

void check_geometry(const UnitaryMatrix& u, const InputConfiguration& input,
                    const OccupationVector& s) {
    if (input.modes().back() >= u.dim()) {
        throw DimensionError("input mode index exceeds interferometer size");
    }
    if (s.modes() != u.dim()) {
        throw DimensionError("outcome mode count must match interferometer size");
    }
    if (s.total() != input.photons()) {
        throw DimensionError("outcome photon total must match input photon count");
    }
}

double finalize_probability(double value) {
    if (value < -kNegativeProbabilityTolerance) {
        throw NumericalError("negative outcome probability " + std::to_string(value));
    }
    return std::max(value, 0.0);
}

} // namespace

std::size_t OutcomeDistribution::index_of(const OccupationVector& s) const {
    const auto it = std::lower_bound(outcomes.begin(), outcomes.end(), s);
    if (it == outcomes.end() || !(*it == s)) {
        throw DimensionError("outcome not present in distribution");
    }
    return static_cast<std::size_t>(it - outcomes.begin());
}

double OutcomeDistribution::prob_of(const OccupationVector& s) const {
    return probs[index_of(s)];
}

ComplexMatrix transition_submatrix(const UnitaryMatrix& u, const InputConfiguration& input,
                                   const OccupationVector& s) {
    check_geometry(u, input, s);
    const std::vector<int> rows = s.mode_multiset();
    const int n = input.photons();
    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = u(rows[static_cast<std::size_t>(r)], input.mode(c));
        }
    }
    return a;
}

double outcome_probability_general(const UnitaryMatrix& u, const InputConfiguration& input,
                                   const OccupationVector& s, const DistinguishabilityModel& model) {
    check_geometry(u, input, s);
    const int n = input.photons();
    if (model.photons() != n) {
        throw DimensionError("Gram matrix size must match photon count");
    }
    if (n > kMaxGeneralPhotons) {
        throw SizeError("general statistics limited to " + std::to_string(kMaxGeneralPhotons) +
                        " photons");
    }
    const std::vector<int> rows = s.mode_multiset();
    const auto perms = all_permutations(n);
    // Amplitude of sending photon k to output slot pi(k), one per ordering.
    std::vector<Complex> amplitudes(perms.size());
    for (std::size_t p = 0; p < perms.size(); ++p) {
        Complex amp(1.0, 0.0);
        for (int k = 0; k < n; ++k) {
            amp *= u(rows[static_cast<std::size_t>(perms[p][static_cast<std::size_t>(k)])], input.mode(k));
        }
        amplitudes[p] = amp;
    }
    Complex accumulated(0.0, 0.0);
    for (std::size_t p = 0; p < perms.size(); ++p) {
        for (std::size_t q = 0; q < perms.size(); ++q) {
            Complex overlap(1.0, 0.0);
            for (int l = 0; l < n; ++l) {
                overlap *= model.overlap(perms[q][static_cast<std::size_t>(l)],
                                         perms[p][static_cast<std::size_t>(l)]);
            }
            accumulated += amplitudes[p] * std::conj(amplitudes[q]) * overlap;
        }
    }
    accumulated /= static_cast<double>(symmetry_factor(s));
    if (std::abs(accumulated.imag()) > kImaginaryTolerance) {
        throw NumericalError("outcome probability has imaginary part " +
                             std::to_string(accumulated.imag()));
    }
    return finalize_probability(accumulated.real());
}

double outcome_probability_indist(const UnitaryMatrix& u, const InputConfiguration& input,
                                  const OccupationVector& s) {
    const ComplexMatrix a = transition_submatrix(u, input, s);
    const Complex perm = permanent_ryser(a);
    return finalize_probability(std::norm(perm) / static_cast<double>(symmetry_factor(s)));
}

double outcome_probability_dist(const UnitaryMatrix& u, const InputConfiguration& input,
                                const OccupationVector& s) {
    const ComplexMatrix a = transition_submatrix(u, input, s);
    const Eigen::MatrixXd intensities = a.cwiseAbs2();
    const double perm = permanent_ryser(intensities);
    return finalize_probability(perm / static_cast<double>(symmetry_factor(s)));
}

namespace {

template <typename ProbabilityFn>
OutcomeDistribution build_distribution(const UnitaryMatrix& u, const InputConfiguration& input,
                                       ProbabilityFn&& probability) {
    OutcomeDistribution dist;
    dist.modes = u.dim();
    dist.photons = input.photons();
    dist.outcomes = enumerate_outcomes(dist.modes, dist.photons);
    dist.probs.reserve(dist.outcomes.size());
    double total = 0.0;
    for (const OccupationVector& s : dist.outcomes) {
        const double p = probability(s);
        dist.probs.push_back(p);
        total += p;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw NumericalError("distribution normalization off by " + std::to_string(total - 1.0));
    }
    for (double& p : dist.probs) {
        p /= total;
    }
    return dist;
}

} // namespace

OutcomeDistribution full_distribution(const UnitaryMatrix& u, const InputConfiguration& input,
                                      const DistinguishabilityModel& model) {
    return build_distribution(u, input, [&](const OccupationVector& s) {
        return outcome_probability_general(u, input, s, model);
    });
}

OutcomeDistribution full_distribution(const UnitaryMatrix& u, const InputConfiguration& input,
                                      PhotonStatistics statistics) {
    if (statistics == PhotonStatistics::indistinguishable) {
        return build_distribution(u, input, [&](const OccupationVector& s) {
            return outcome_probability_indist(u, input, s);
        });
    }
    return build_distribution(u, input, [&](const OccupationVector& s) {
        return outcome_probability_dist(u, input, s);
    });
}

std::vector<double> marginal_mode_distribution(const OutcomeDistribution& dist, int mode) {
    if (mode < 0 || mode >= dist.modes) {
        throw DimensionError("marginal mode index out of range");
    }
    std::vector<double> marginal(static_cast<std::size_t>(dist.photons) + 1, 0.0);
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        marginal[static_cast<std::size_t>(dist.outcomes[i][mode])] += dist.probs[i];
    }
    return marginal;
}

std::vector<double> mean_photon_numbers(const UnitaryMatrix& u, const InputConfiguration& input) {
    if (input.modes().back() >= u.dim()) {
        throw DimensionError("input mode index exceeds interferometer size");
    }
    std::vector<double> means(static_cast<std::size_t>(u.dim()), 0.0);
    for (int j = 0; j < u.dim(); ++j) {
        for (const int i : input.modes()) {
            means[static_cast<std::size_t>(j)] += std::norm(u(j, i));
        }
    }
    return means;
}

double hom_visibility_bound(double visibility) {
    if (visibility < 0.0 || visibility > 1.0) {
        throw DimensionError("visibility must lie in [0, 1]");
    }
    return std::sqrt(visibility);
}

} // namespace demonsim
