#pragma once

#include <span>

#include "demonsim/interference.hpp"
#include "demonsim/weingarten.hpp"

namespace demonsim {

enum class StatisticsLabel {
    distinguishable,
    indistinguishable,
    partial,
};

StatisticsLabel to_label(PhotonStatistics statistics);

// Outcome law averaged over the unitary ensemble. Analytic averages carry
// exact rational probabilities (and empty std_errors); empirical averages
// carry per-outcome standard errors of the mean (and empty exact_probs).
struct HaarAveragedDistribution {
    int modes = 0;
    int photons = 0;
    StatisticsLabel statistics = StatisticsLabel::indistinguishable;
    std::vector<OccupationVector> outcomes;
    std::vector<Rational> exact_probs;
    std::vector<double> probs;
    std::vector<double> std_errors;
    std::size_t ensemble_size = 0;

    bool is_exact() const { return !exact_probs.empty(); }
    OutcomeDistribution to_distribution() const;
};

// Identical photons: the average is uniform over outcomes, 1/C(M+N-1, N).
HaarAveragedDistribution haar_average_indist(int modes, int photons);

// Fully distinguishable photons: (1/mu(s)) sum over permutation pairs
// (pi, sigma) of [prod_k delta(o_{pi(k)}, o_{pi(sigma(k))})] Wg_{M,N}(sigma),
// evaluated per occupancy type in exact rationals. Requires modes >= photons
// and photons <= 6.
HaarAveragedDistribution haar_average_dist(int modes, int photons);

// Arithmetic mean of the per-unitary distributions; std_errors hold the
// standard error of the mean per outcome (zero for a single unitary).
HaarAveragedDistribution haar_average_empirical(std::span<const UnitaryMatrix> ensemble,
                                                const InputConfiguration& input,
                                                PhotonStatistics statistics);
HaarAveragedDistribution haar_average_empirical(std::span<const UnitaryMatrix> ensemble,
                                                const InputConfiguration& input,
                                                const DistinguishabilityModel& model);

// Single-mode photon-count law P(0..N) in exact arithmetic; requires an
// analytic (exact) average.
std::vector<Rational> exact_marginal(const HaarAveragedDistribution& average, int mode);

// Marginal of the uniform N-in-M law: P(n) = C(N-n+M-2, M-2)/C(M+N-1, N).
std::vector<Rational> uniform_law_marginal(int modes, int photons);

} // namespace demonsim
