#pragma once

#include <vector>

#include "demonsim/gram.hpp"
#include "demonsim/matrix.hpp"
#include "demonsim/occupation.hpp"

namespace demonsim {

enum class PhotonStatistics {
    distinguishable,
    indistinguishable,
};

inline constexpr int kMaxGeneralPhotons = 6;
inline constexpr double kImaginaryTolerance = 1e-8;
inline constexpr double kNegativeProbabilityTolerance = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-6;

// Probabilities over the full outcome set of (modes, photons), stored in
// ascending lexicographic outcome order.
struct OutcomeDistribution {
    int modes = 0;
    int photons = 0;
    std::vector<OccupationVector> outcomes;
    std::vector<double> probs;

    std::size_t index_of(const OccupationVector& s) const;
    double prob_of(const OccupationVector& s) const;
};

// N x N transition block A_{r k} = U_{o_r, i_k}: rows follow the outcome's
// mode multiset (ascending), columns the occupied input modes (ascending).
ComplexMatrix transition_submatrix(const UnitaryMatrix& u, const InputConfiguration& input,
                                   const OccupationVector& s);

// Outcome probability for an arbitrary Gram matrix: double sum over photon
// orderings pi, pi' of the amplitude pair weighted by prod_l <psi_{pi'(l)} |
// psi_{pi(l)}>, divided by prod_j s_j!. Cost (N!)^2; rejects N > 6.
double outcome_probability_general(const UnitaryMatrix& u, const InputConfiguration& input,
                                   const OccupationVector& s, const DistinguishabilityModel& model);

// |perm(A)|^2 / prod_j s_j! for identical photons.
double outcome_probability_indist(const UnitaryMatrix& u, const InputConfiguration& input,
                                  const OccupationVector& s);

// perm(|A|^2) / prod_j s_j! for fully distinguishable photons.
double outcome_probability_dist(const UnitaryMatrix& u, const InputConfiguration& input,
                                const OccupationVector& s);

OutcomeDistribution full_distribution(const UnitaryMatrix& u, const InputConfiguration& input,
                                      const DistinguishabilityModel& model);
OutcomeDistribution full_distribution(const UnitaryMatrix& u, const InputConfiguration& input,
                                      PhotonStatistics statistics);

// Single-mode photon-count law P(n) for n = 0..N, summed from a full
// distribution.
std::vector<double> marginal_mode_distribution(const OutcomeDistribution& dist, int mode);

// Mean photon number per output mode, sum_{i in input} |U_{j i}|^2; identical
// for all Gram matrices, so no statistics argument.
std::vector<double> mean_photon_numbers(const UnitaryMatrix& u, const InputConfiguration& input);

// Mutual overlap |<psi_1|psi_2>| guaranteed by a two-photon interference dip
// of visibility V: sqrt(V).
double hom_visibility_bound(double visibility);

} // namespace demonsim
