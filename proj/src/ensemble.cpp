#include "demonsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace demonsim {

DetectorModel::DetectorModel(std::vector<double> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw DimensionError("detector model needs at least one mode");
    }
    for (const double f : factors_) {
        if (!(f > 0.0)) {
            throw DimensionError("detector factors must be positive");
        }
    }
}

DetectorModel DetectorModel::ideal(int modes) {
    return DetectorModel(std::vector<double>(static_cast<std::size_t>(modes), 1.0));
}

bool DetectorModel::is_ideal() const {
    return std::all_of(factors_.begin(), factors_.end(), [](double f) { return f == 1.0; });
}

std::vector<TrialRecord> sample_trials(const OutcomeDistribution& dist, std::size_t trials,
                                       RandomSeed seed, std::size_t unitary_index) {
    if (dist.outcomes.empty()) {
        throw DimensionError("cannot sample from an empty distribution");
    }
    std::vector<double> cumulative(dist.probs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        running += dist.probs[i];
        cumulative[i] = running;
    }
    cumulative.back() = std::max(cumulative.back(), 1.0);
    RandomStream stream(seed);
    std::vector<TrialRecord> records;
    records.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const double draw = stream.uniform();
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), draw,
                                         [](double edge, double value) { return edge <= value; });
        const std::size_t index =
            std::min(static_cast<std::size_t>(it - cumulative.begin()), dist.outcomes.size() - 1);
        records.push_back(TrialRecord{unitary_index, dist.outcomes[index]});
    }
    return records;
}

std::vector<double> mean_counts(const OutcomeDistribution& dist) {
    std::vector<double> means(static_cast<std::size_t>(dist.modes), 0.0);
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        for (int mode = 0; mode < dist.modes; ++mode) {
            means[static_cast<std::size_t>(mode)] += dist.probs[i] * dist.outcomes[i][mode];
        }
    }
    return means;
}

std::vector<double> apply_detector_bias(const std::vector<double>& counts,
                                        const DetectorModel& detector) {
    if (static_cast<int>(counts.size()) != detector.modes()) {
        throw DimensionError("detector model size must match mode count");
    }
    std::vector<double> reconstructed(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        reconstructed[j] = detector.factors()[j] * counts[j];
    }
    return reconstructed;
}

RandomSeed ensemble_unitary_seed(RandomSeed run_seed, std::size_t index) {
    return run_seed.substream(2 * index);
}

RandomSeed ensemble_trials_seed(RandomSeed run_seed, std::size_t index) {
    return run_seed.substream(2 * index + 1);
}

namespace {

OutcomeDistribution empirical_from_trials(const OutcomeDistribution& exact,
                                          const std::vector<TrialRecord>& records) {
    OutcomeDistribution empirical;
    empirical.modes = exact.modes;
    empirical.photons = exact.photons;
    empirical.outcomes = exact.outcomes;
    empirical.probs.assign(exact.outcomes.size(), 0.0);
    const double weight = 1.0 / static_cast<double>(records.size());
    for (const TrialRecord& record : records) {
        empirical.probs[empirical.index_of(record.outcome)] += weight;
    }
    return empirical;
}

} // namespace

EnsembleDeltaN ensemble_delta_n(std::size_t unitary_count, PhotonStatistics statistics,
                                DemonMode mode, const ModeConfiguration& config,
                                const DetectorModel& detector, std::size_t trials_per_unitary,
                                RandomSeed seed, int modes, int photons) {
    if (unitary_count == 0) {
        throw DimensionError("ensemble requires at least one unitary");
    }
    if (detector.modes() != modes) {
        throw DimensionError("detector model size must match mode count");
    }
    const InputConfiguration input = InputConfiguration::first_modes(photons);
    const std::span<const double> scale =
        detector.is_ideal() ? std::span<const double>{} : std::span<const double>(detector.factors());
    EnsembleDeltaN result;
    result.per_unitary_means.reserve(unitary_count);
    std::map<int, double> aggregate_buckets;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < unitary_count; ++k) {
        const UnitaryMatrix u = sample_haar(modes, ensemble_unitary_seed(seed, k));
        OutcomeDistribution dist = full_distribution(u, input, statistics);
        if (trials_per_unitary > 0) {
            const auto records =
                sample_trials(dist, trials_per_unitary, ensemble_trials_seed(seed, k), k);
            dist = empirical_from_trials(dist, records);
        }
        const double reported = delta_n_mean(dist, config, mode, scale);
        const DeltaNDistribution raw = mode == DemonMode::active ? delta_n_active(dist, config)
                                                                 : delta_n_passive(dist, config);
        for (const auto& [delta, p] : raw.probs) {
            aggregate_buckets[delta] += p;
        }
        result.per_unitary_means.push_back(reported);
        sum += reported;
        sum_sq += reported * reported;
    }
    const double k_count = static_cast<double>(unitary_count);
    result.stats.unitary_count = unitary_count;
    result.stats.trials_per_unitary = trials_per_unitary;
    result.stats.mean = sum / k_count;
    if (unitary_count > 1) {
        const double variance =
            std::max(0.0, (sum_sq - k_count * result.stats.mean * result.stats.mean) / (k_count - 1.0));
        result.stats.std_error = std::sqrt(variance / k_count);
    }
    for (const auto& [delta, p] : aggregate_buckets) {
        result.distribution.probs.emplace(delta, p / k_count);
        result.distribution.mean += delta * p / k_count;
    }
    result.distribution.std_error = result.stats.std_error;
    return result;
}

ModeFluxHistogram mode_flux_histogram(std::size_t unitary_count, PhotonStatistics statistics,
                                      const DetectorModel& detector, RandomSeed seed, int modes,
                                      int photons, double bin_width) {
    if (unitary_count == 0) {
        throw DimensionError("flux histogram requires at least one unitary");
    }
    if (detector.modes() != modes) {
        throw DimensionError("detector model size must match mode count");
    }
    if (!(bin_width > 0.0)) {
        throw DimensionError("bin width must be positive");
    }
    const InputConfiguration input = InputConfiguration::first_modes(photons);
    ModeFluxHistogram histogram;
    histogram.bin_width = bin_width;
    histogram.statistics = statistics;
    histogram.per_unitary.assign(static_cast<std::size_t>(modes), {});
    histogram.ensemble_means.assign(static_cast<std::size_t>(modes), 0.0);
    double max_value = 0.0;
    for (std::size_t k = 0; k < unitary_count; ++k) {
        const UnitaryMatrix u = sample_haar(modes, ensemble_unitary_seed(seed, k));
        const std::vector<double> reconstructed =
            apply_detector_bias(mean_photon_numbers(u, input), detector);
        for (int j = 0; j < modes; ++j) {
            const double value = reconstructed[static_cast<std::size_t>(j)];
            histogram.per_unitary[static_cast<std::size_t>(j)].push_back(value);
            histogram.ensemble_means[static_cast<std::size_t>(j)] += value;
            max_value = std::max(max_value, value);
        }
    }
    for (double& mean : histogram.ensemble_means) {
        mean /= static_cast<double>(unitary_count);
    }
    const std::size_t bins = static_cast<std::size_t>(std::floor(max_value / bin_width)) + 1;
    histogram.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        histogram.bin_edges[b] = static_cast<double>(b) * bin_width;
    }
    histogram.counts.assign(static_cast<std::size_t>(modes), std::vector<long long>(bins, 0));
    for (int j = 0; j < modes; ++j) {
        for (const double value : histogram.per_unitary[static_cast<std::size_t>(j)]) {
            const std::size_t bin =
                std::min(bins - 1, static_cast<std::size_t>(std::floor(value / bin_width)));
            ++histogram.counts[static_cast<std::size_t>(j)][bin];
        }
    }
    return histogram;
}

} // namespace demonsim
