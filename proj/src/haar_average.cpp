#include "demonsim/haar_average.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace demonsim {

StatisticsLabel to_label(PhotonStatistics statistics) {
    return statistics == PhotonStatistics::indistinguishable ? StatisticsLabel::indistinguishable
                                                             : StatisticsLabel::distinguishable;
}

OutcomeDistribution HaarAveragedDistribution::to_distribution() const {
    OutcomeDistribution dist;
    dist.modes = modes;
    dist.photons = photons;
    dist.outcomes = outcomes;
    dist.probs = probs;
    return dist;
}

namespace {

HaarAveragedDistribution analytic_shell(int modes, int photons, StatisticsLabel label) {
    if (modes < 1 || photons < 0) {
        throw DimensionError("haar average requires modes >= 1 and photons >= 0");
    }
    HaarAveragedDistribution average;
    average.modes = modes;
    average.photons = photons;
    average.statistics = label;
    average.outcomes = enumerate_outcomes(modes, photons);
    return average;
}

void cast_probs(HaarAveragedDistribution& average) {
    average.probs.reserve(average.exact_probs.size());
    for (const Rational& p : average.exact_probs) {
        average.probs.push_back(boost::rational_cast<double>(p));
    }
}

} // namespace

HaarAveragedDistribution haar_average_indist(int modes, int photons) {
    HaarAveragedDistribution average =
        analytic_shell(modes, photons, StatisticsLabel::indistinguishable);
    const long long support = binomial(modes + photons - 1, photons);
    average.exact_probs.assign(average.outcomes.size(), Rational(1, support));
    cast_probs(average);
    return average;
}

HaarAveragedDistribution haar_average_dist(int modes, int photons) {
    HaarAveragedDistribution average =
        analytic_shell(modes, photons, StatisticsLabel::distinguishable);
    if (photons > kMaxGeneralPhotons) {
        throw SizeError("distinguishable Haar average limited to 6 photons");
    }
    if (modes < photons) {
        throw DimensionError("distinguishable Haar average requires modes >= photons");
    }
    WeingartenCache cache(modes, photons);
    const auto perms = all_permutations(photons);
    // The delta product depends on the outcome only through its occupancy
    // type, so evaluate once per type.
    std::map<std::vector<int>, Rational> per_type;
    for (const OccupationVector& s : average.outcomes) {
        const std::vector<int> type = s.occupancy_type();
        if (per_type.contains(type)) {
            continue;
        }
        const std::vector<int> o = s.mode_multiset();
        const auto slot = [&](const Permutation& pi, int k) {
            return o[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])];
        };
        // Count surviving sigmas per cycle type; Weingarten weights attach
        // after counting so the rational arithmetic stays light.
        std::map<Partition, long long> survivors;
        for (const Permutation& pi : perms) {
            for (const Permutation& sigma : perms) {
                bool match = true;
                for (int k = 0; k < photons; ++k) {
                    if (slot(pi, k) != slot(pi, sigma[static_cast<std::size_t>(k)])) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    ++survivors[cycle_type(sigma)];
                }
            }
        }
        Rational total(0);
        for (const auto& [type_sigma, count] : survivors) {
            total += cache.exact_value(type_sigma) * count;
        }
        per_type.emplace(type, total / symmetry_factor(s));
    }
    average.exact_probs.reserve(average.outcomes.size());
    Rational normalization(0);
    for (const OccupationVector& s : average.outcomes) {
        const Rational p = per_type.at(s.occupancy_type());
        average.exact_probs.push_back(p);
        normalization += p;
    }
    if (normalization != Rational(1)) {
        throw NumericalError("distinguishable Haar average failed to normalize exactly");
    }
    cast_probs(average);
    return average;
}

namespace {

template <typename DistributionFn>
HaarAveragedDistribution empirical_average(std::span<const UnitaryMatrix> ensemble,
                                           const InputConfiguration& input, StatisticsLabel label,
                                           DistributionFn&& distribution_of) {
    if (ensemble.empty()) {
        throw DimensionError("empirical average requires a non-empty ensemble");
    }
    const int modes = ensemble.front().dim();
    for (const UnitaryMatrix& u : ensemble) {
        if (u.dim() != modes) {
            throw DimensionError("ensemble mixes unitary dimensions");
        }
    }
    HaarAveragedDistribution average = analytic_shell(modes, input.photons(), label);
    average.exact_probs.clear();
    average.ensemble_size = ensemble.size();
    const std::size_t support = average.outcomes.size();
    std::vector<double> sum(support, 0.0);
    std::vector<double> sum_sq(support, 0.0);
    for (const UnitaryMatrix& u : ensemble) {
        const OutcomeDistribution dist = distribution_of(u);
        for (std::size_t i = 0; i < support; ++i) {
            sum[i] += dist.probs[i];
            sum_sq[i] += dist.probs[i] * dist.probs[i];
        }
    }
    const double k = static_cast<double>(ensemble.size());
    average.probs.resize(support);
    average.std_errors.assign(support, 0.0);
    for (std::size_t i = 0; i < support; ++i) {
        average.probs[i] = sum[i] / k;
        if (ensemble.size() > 1) {
            const double variance =
                std::max(0.0, (sum_sq[i] - k * average.probs[i] * average.probs[i]) / (k - 1.0));
            average.std_errors[i] = std::sqrt(variance / k);
        }
    }
    return average;
}

} // namespace

HaarAveragedDistribution haar_average_empirical(std::span<const UnitaryMatrix> ensemble,
                                                const InputConfiguration& input,
                                                PhotonStatistics statistics) {
    return empirical_average(ensemble, input, to_label(statistics), [&](const UnitaryMatrix& u) {
        return full_distribution(u, input, statistics);
    });
}

HaarAveragedDistribution haar_average_empirical(std::span<const UnitaryMatrix> ensemble,
                                                const InputConfiguration& input,
                                                const DistinguishabilityModel& model) {
    return empirical_average(ensemble, input, StatisticsLabel::partial, [&](const UnitaryMatrix& u) {
        return full_distribution(u, input, model);
    });
}

std::vector<Rational> exact_marginal(const HaarAveragedDistribution& average, int mode) {
    if (!average.is_exact()) {
        throw DimensionError("exact marginal requires an analytic average");
    }
    if (mode < 0 || mode >= average.modes) {
        throw DimensionError("marginal mode index out of range");
    }
    std::vector<Rational> marginal(static_cast<std::size_t>(average.photons) + 1, Rational(0));
    for (std::size_t i = 0; i < average.outcomes.size(); ++i) {
        marginal[static_cast<std::size_t>(average.outcomes[i][mode])] += average.exact_probs[i];
    }
    return marginal;
}

std::vector<Rational> uniform_law_marginal(int modes, int photons) {
    if (modes < 2 || photons < 0) {
        throw DimensionError("uniform-law marginal requires modes >= 2 and photons >= 0");
    }
    const long long support = binomial(modes + photons - 1, photons);
    std::vector<Rational> marginal;
    marginal.reserve(static_cast<std::size_t>(photons) + 1);
    for (int n = 0; n <= photons; ++n) {
        marginal.emplace_back(binomial(photons - n + modes - 2, modes - 2), support);
    }
    return marginal;
}

} // namespace demonsim
