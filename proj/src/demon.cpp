#include "demonsim/demon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace demonsim {

namespace {

void check_config(const ModeConfiguration& config, int modes) {
    if (config.modes() != modes) {
        throw DimensionError("configuration covers a different mode count");
    }
}

void check_scale(std::span<const double> scale, int modes) {
    if (!scale.empty() && static_cast<int>(scale.size()) != modes) {
        throw DimensionError("detector scale length must match mode count");
    }
}

// Post-switch analyzed modes for one outcome. Active demons swap the subset
// labels when the (scaled) A total falls strictly below the B total.
std::pair<int, int> resolve_analyzed(const OccupationVector& s, const ModeConfiguration& config,
                                     DemonMode mode, std::span<const double> scale) {
    if (mode == DemonMode::passive) {
        return {config.measured_a, config.measured_b};
    }
    double total_a = 0.0;
    double total_b = 0.0;
    for (const int j : config.subset_a) {
        total_a += scale.empty() ? s[j] : scale[static_cast<std::size_t>(j)] * s[j];
    }
    for (const int j : config.subset_b) {
        total_b += scale.empty() ? s[j] : scale[static_cast<std::size_t>(j)] * s[j];
    }
    if (total_a < total_b) {
        return {config.measured_b, config.measured_a};
    }
    return {config.measured_a, config.measured_b};
}

template <typename Prob>
DeltaNDistribution accumulate_delta_n(const std::vector<OccupationVector>& outcomes,
                                      const std::vector<Prob>& probs,
                                      const ModeConfiguration& config, DemonMode mode) {
    std::map<int, Prob> buckets;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto [a, b] = resolve_analyzed(outcomes[i], config, mode, {});
        buckets[outcomes[i][a] - outcomes[i][b]] += probs[i];
    }
    DeltaNDistribution result;
    Prob mean{};
    for (const auto& [delta, p] : buckets) {
        if constexpr (std::is_same_v<Prob, Rational>) {
            result.probs.emplace(delta, boost::rational_cast<double>(p));
            mean += p * delta;
        } else {
            result.probs.emplace(delta, p);
            mean += p * delta;
        }
    }
    if constexpr (std::is_same_v<Prob, Rational>) {
        result.mean = boost::rational_cast<double>(mean);
    } else {
        result.mean = mean;
    }
    return result;
}

DeltaNDistribution delta_n_exact(const HaarAveragedDistribution& average,
                                 const ModeConfiguration& config, DemonMode mode) {
    check_config(config, average.modes);
    if (average.is_exact()) {
        return accumulate_delta_n(average.outcomes, average.exact_probs, config, mode);
    }
    return accumulate_delta_n(average.outcomes, average.probs, config, mode);
}

} // namespace

ModeConfiguration make_configuration(int modes, std::vector<int> subset_a, int measured_a,
                                     int measured_b) {
    if (modes < 2 || modes % 2 != 0) {
        throw DimensionError("configurations need an even mode count >= 2");
    }
    std::sort(subset_a.begin(), subset_a.end());
    if (std::adjacent_find(subset_a.begin(), subset_a.end()) != subset_a.end()) {
        throw DimensionError("subset A has repeated modes");
    }
    if (static_cast<int>(subset_a.size()) != modes / 2) {
        throw DimensionError("subset A must hold exactly half the modes");
    }
    for (const int j : subset_a) {
        if (j < 0 || j >= modes) {
            throw DimensionError("subset A mode index out of range");
        }
    }
    std::vector<int> subset_b;
    subset_b.reserve(static_cast<std::size_t>(modes / 2));
    for (int j = 0; j < modes; ++j) {
        if (!std::binary_search(subset_a.begin(), subset_a.end(), j)) {
            subset_b.push_back(j);
        }
    }
    if (!std::binary_search(subset_a.begin(), subset_a.end(), measured_a)) {
        throw DimensionError("analyzed mode A must lie in subset A");
    }
    if (!std::binary_search(subset_b.begin(), subset_b.end(), measured_b)) {
        throw DimensionError("analyzed mode B must lie in subset B");
    }
    return ModeConfiguration{std::move(subset_a), std::move(subset_b), measured_a, measured_b};
}

ModeConfiguration canonical_configuration(int modes) {
    std::vector<int> lower(static_cast<std::size_t>(modes / 2));
    std::iota(lower.begin(), lower.end(), 0);
    return make_configuration(modes, std::move(lower), 0, modes / 2);
}

std::vector<ModeConfiguration> enumerate_configurations(int modes) {
    if (modes < 2 || modes % 2 != 0) {
        throw DimensionError("configurations need an even mode count >= 2");
    }
    std::vector<ModeConfiguration> configs;
    // Subsets via lexicographically increasing combinations.
    std::vector<int> selector(static_cast<std::size_t>(modes), 0);
    std::fill(selector.begin(), selector.begin() + modes / 2, 1);
    std::vector<std::vector<int>> subsets;
    // std::prev_permutation walks descending selector patterns, which lists
    // the chosen index sets in ascending lexicographic order.
    do {
        std::vector<int> subset;
        for (int j = 0; j < modes; ++j) {
            if (selector[static_cast<std::size_t>(j)] == 1) {
                subset.push_back(j);
            }
        }
        subsets.push_back(std::move(subset));
    } while (std::prev_permutation(selector.begin(), selector.end()));
    for (const auto& subset : subsets) {
        std::vector<int> complement;
        for (int j = 0; j < modes; ++j) {
            if (!std::binary_search(subset.begin(), subset.end(), j)) {
                complement.push_back(j);
            }
        }
        for (const int a : subset) {
            for (const int b : complement) {
                configs.push_back(make_configuration(modes, subset, a, b));
            }
        }
    }
    return configs;
}

DeltaNDistribution delta_n_passive(const OutcomeDistribution& dist,
                                   const ModeConfiguration& config) {
    check_config(config, dist.modes);
    return accumulate_delta_n(dist.outcomes, dist.probs, config, DemonMode::passive);
}

DeltaNDistribution delta_n_active(const OutcomeDistribution& dist, const ModeConfiguration& config) {
    check_config(config, dist.modes);
    return accumulate_delta_n(dist.outcomes, dist.probs, config, DemonMode::active);
}

DeltaNDistribution delta_n_passive(const HaarAveragedDistribution& average,
                                   const ModeConfiguration& config) {
    return delta_n_exact(average, config, DemonMode::passive);
}

DeltaNDistribution delta_n_active(const HaarAveragedDistribution& average,
                                  const ModeConfiguration& config) {
    return delta_n_exact(average, config, DemonMode::active);
}

double delta_n_mean(const OutcomeDistribution& dist, const ModeConfiguration& config,
                    DemonMode mode, std::span<const double> detector_scale) {
    check_config(config, dist.modes);
    check_scale(detector_scale, dist.modes);
    double mean = 0.0;
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        const OccupationVector& s = dist.outcomes[i];
        const auto [a, b] = resolve_analyzed(s, config, mode, detector_scale);
        const double reported_a =
            detector_scale.empty() ? s[a] : detector_scale[static_cast<std::size_t>(a)] * s[a];
        const double reported_b =
            detector_scale.empty() ? s[b] : detector_scale[static_cast<std::size_t>(b)] * s[b];
        mean += dist.probs[i] * (reported_a - reported_b);
    }
    return mean;
}

double photon_energy_from_wavelength(double wavelength_m) {
    if (wavelength_m <= 0.0) {
        throw DimensionError("wavelength must be positive");
    }
    return kPlanck * kSpeedOfLight / wavelength_m;
}

TemperatureReport effective_temperature(double density, double photon_energy) {
    if (density < 0.0) {
        throw DimensionError("photon density must be non-negative");
    }
    if (photon_energy <= 0.0) {
        throw DimensionError("photon energy must be positive");
    }
    TemperatureReport report;
    report.photon_density = density;
    report.photon_energy = photon_energy;
    report.temperature =
        density == 0.0 ? 0.0 : (photon_energy / kBoltzmann) / std::log1p(1.0 / density);
    return report;
}

double fit_family_probability(int n, int photons, int modes) {
    if (photons < 1 || modes < 2) {
        throw DimensionError("fit family requires photons >= 1 and modes >= 2");
    }
    if (n < 0 || n > photons) {
        return 0.0;
    }
    return boost::rational_cast<double>(
        Rational(binomial(photons - n + modes - 2, modes - 2), binomial(photons + modes - 1, photons)));
}

TemperatureFit fit_temperature(const std::vector<double>& observed, double photon_energy,
                               int max_photons, int max_modes) {
    if (observed.empty()) {
        throw DimensionError("fit requires a non-empty distribution");
    }
    double total = 0.0;
    for (const double p : observed) {
        if (p < 0.0) {
            throw NumericalError("fit input has negative probabilities");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw NumericalError("fit input is not normalized");
    }
    TemperatureFit best;
    best.tv_distance = std::numeric_limits<double>::infinity();
    // Ascending loops plus strict improvement implement the tie rule:
    // smaller M wins, then smaller N.
    for (int modes = 2; modes <= max_modes; ++modes) {
        for (int photons = 1; photons <= max_photons; ++photons) {
            const int support = std::max(photons, static_cast<int>(observed.size()) - 1);
            double tv = 0.0;
            for (int n = 0; n <= support; ++n) {
                const double obs = n < static_cast<int>(observed.size())
                                       ? observed[static_cast<std::size_t>(n)]
                                       : 0.0;
                tv += std::abs(obs - fit_family_probability(n, photons, modes));
            }
            tv *= 0.5;
            if (tv < best.tv_distance) {
                best.tv_distance = tv;
                best.photons = photons;
                best.modes = modes;
            }
        }
    }
    best.report = effective_temperature(static_cast<double>(best.photons) / best.modes, photon_energy);
    return best;
}

std::pair<TemperatureReport, TemperatureReport> subset_temperatures(
    const OutcomeDistribution& dist, const ModeConfiguration& config, double photon_energy,
    DemonMode mode, DensityConvention convention) {
    check_config(config, dist.modes);
    double density_a = 0.0;
    double density_b = 0.0;
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        const OccupationVector& s = dist.outcomes[i];
        const auto [a, b] = resolve_analyzed(s, config, mode, {});
        if (convention == DensityConvention::measured_mode) {
            density_a += dist.probs[i] * s[a];
            density_b += dist.probs[i] * s[b];
        } else {
            const bool swapped = a != config.measured_a;
            int total_a = 0;
            int total_b = 0;
            for (const int j : config.subset_a) {
                total_a += s[j];
            }
            for (const int j : config.subset_b) {
                total_b += s[j];
            }
            if (swapped) {
                std::swap(total_a, total_b);
            }
            const double half = static_cast<double>(config.subset_a.size());
            density_a += dist.probs[i] * total_a / half;
            density_b += dist.probs[i] * total_b / half;
        }
    }
    return {effective_temperature(density_a, photon_energy),
            effective_temperature(density_b, photon_energy)};
}

namespace {

void check_shared_shape(std::span<const OutcomeDistribution> dists) {
    if (dists.empty()) {
        throw DimensionError("at least one distribution is required");
    }
    for (const OutcomeDistribution& dist : dists) {
        if (dist.modes != dists.front().modes || dist.photons != dists.front().photons) {
            throw DimensionError("distributions disagree on (modes, photons)");
        }
    }
}

} // namespace

RandomizedEstimate randomized_partition_estimate(std::span<const OutcomeDistribution> dists,
                                                 int rounds, DemonMode mode, RandomSeed seed,
                                                 std::span<const double> detector_scale) {
    check_shared_shape(dists);
    if (rounds <= 0) {
        throw DimensionError("rounds must be positive");
    }
    const auto configs = enumerate_configurations(dists.front().modes);
    std::vector<double> round_means;
    round_means.reserve(static_cast<std::size_t>(rounds));
    for (int round = 0; round < rounds; ++round) {
        RandomStream stream(seed.substream(static_cast<std::uint64_t>(round)));
        double round_mean = 0.0;
        for (const OutcomeDistribution& dist : dists) {
            const auto& config = configs[stream.uniform_int(configs.size())];
            round_mean += delta_n_mean(dist, config, mode, detector_scale);
        }
        round_means.push_back(round_mean / static_cast<double>(dists.size()));
    }
    RandomizedEstimate estimate;
    estimate.rounds = rounds;
    double sum = 0.0;
    for (const double value : round_means) {
        sum += value;
    }
    estimate.mean = sum / rounds;
    if (rounds > 1) {
        double sum_sq = 0.0;
        for (const double value : round_means) {
            const double centered = value - estimate.mean;
            sum_sq += centered * centered;
        }
        estimate.std_dev = std::sqrt(sum_sq / (rounds - 1.0));
    }
    return estimate;
}

std::vector<SweepEntry> configuration_sweep(std::span<const OutcomeDistribution> dists,
                                            DemonMode mode,
                                            std::span<const double> detector_scale) {
    check_shared_shape(dists);
    std::vector<SweepEntry> entries;
    for (const ModeConfiguration& config : enumerate_configurations(dists.front().modes)) {
        double mean = 0.0;
        for (const OutcomeDistribution& dist : dists) {
            mean += delta_n_mean(dist, config, mode, detector_scale);
        }
        entries.push_back(SweepEntry{config, mean / static_cast<double>(dists.size())});
    }
    return entries;
}

namespace {

template <typename Statistics>
std::pair<std::vector<double>, std::vector<double>> run_equilibration(const UnitaryMatrix& u3,
                                                                      const UnitaryMatrix& u4,
                                                                      const Statistics& statistics) {
    if (u3.dim() != 3 || u4.dim() != 4) {
        throw DimensionError("equilibration expects a 3-mode stage and a 4-mode stage");
    }
    const InputConfiguration input = InputConfiguration::first_modes(3);
    const auto stage1 = marginal_mode_distribution(full_distribution(u3, input, statistics), 0);
    const UnitaryMatrix combined = compose(embed_unitary(u3, 4, 0), u4);
    const auto stage2 = marginal_mode_distribution(full_distribution(combined, input, statistics), 0);
    return {stage1, stage2};
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> equilibration_pipeline(
    const UnitaryMatrix& u3, const UnitaryMatrix& u4, const DistinguishabilityModel& model) {
    if (model.photons() != 3) {
        throw DimensionError("equilibration uses three photons");
    }
    return run_equilibration(u3, u4, model);
}

std::pair<std::vector<double>, std::vector<double>> equilibration_pipeline(
    const UnitaryMatrix& u3, const UnitaryMatrix& u4, PhotonStatistics statistics) {
    return run_equilibration(u3, u4, statistics);
}

} // namespace demonsim
