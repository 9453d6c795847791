#pragma once

#include "demonsim/demon.hpp"
#include "demonsim/haar.hpp"

namespace demonsim {

// Per-mode multiplicative miscalibration of reconstructed photon counts;
// all factors 1.0 models ideal detectors.
class DetectorModel {
public:
    explicit DetectorModel(std::vector<double> factors);

    static DetectorModel ideal(int modes);

    int modes() const { return static_cast<int>(factors_.size()); }
    const std::vector<double>& factors() const { return factors_; }
    bool is_ideal() const;

private:
    std::vector<double> factors_;
};

struct TrialRecord {
    std::size_t unitary_index = 0;
    OccupationVector outcome;
};

// Inverse-transform samples from one exact distribution; deterministic under
// a fixed seed.
std::vector<TrialRecord> sample_trials(const OutcomeDistribution& dist, std::size_t trials,
                                       RandomSeed seed, std::size_t unitary_index = 0);

// Expected photon count per mode under the distribution.
std::vector<double> mean_counts(const OutcomeDistribution& dist);

// Reconstructed expected counts r_j = factor_j * counts_j. Non-unit factors
// may push a mean count above 1, the signature of miscalibration.
std::vector<double> apply_detector_bias(const std::vector<double>& counts,
                                        const DetectorModel& detector);

// Stream layout shared by every ensemble-style run: unitary k draws from
// substream 2k of the run seed, its trial sampling from substream 2k+1, so
// independently computed quantities over "the same ensemble" agree exactly.
RandomSeed ensemble_unitary_seed(RandomSeed run_seed, std::size_t index);
RandomSeed ensemble_trials_seed(RandomSeed run_seed, std::size_t index);

struct EnsembleStats {
    double mean = 0.0;
    double std_error = 0.0; // std dev of per-unitary means / sqrt(K)
    std::size_t unitary_count = 0;
    std::size_t trials_per_unitary = 0; // 0 = exact per-unitary distributions
};

struct EnsembleDeltaN {
    EnsembleStats stats;
    // Aggregated law of the integer count difference; its mean uses the raw
    // counts even when stats.mean uses detector-reconstructed ones.
    DeltaNDistribution distribution;
    std::vector<double> per_unitary_means;
};

// K Haar unitaries at (modes, photons); per unitary either the exact outcome
// distribution (trials_per_unitary = 0) or an empirical one from sampled
// trials, then the demon protocol under `config` with detector
// reconstruction applied.
EnsembleDeltaN ensemble_delta_n(std::size_t unitary_count, PhotonStatistics statistics,
                                DemonMode mode, const ModeConfiguration& config,
                                const DetectorModel& detector, std::size_t trials_per_unitary,
                                RandomSeed seed, int modes = 4, int photons = 3);

struct ModeFluxHistogram {
    double bin_width = 0.0;
    std::vector<double> bin_edges;               // shared, bin k = [edge_k, edge_{k+1})
    std::vector<std::vector<long long>> counts;  // [mode][bin]
    std::vector<double> ensemble_means;          // per mode, over unitaries
    std::vector<std::vector<double>> per_unitary; // [mode][unitary] reconstructed mean count
    PhotonStatistics statistics = PhotonStatistics::indistinguishable;
};

// Distribution of per-unitary mean photon numbers across a Haar ensemble,
// after detector reconstruction. Mean counts do not depend on the statistics
// model; the label is carried through for reporting only.
ModeFluxHistogram mode_flux_histogram(std::size_t unitary_count, PhotonStatistics statistics,
                                      const DetectorModel& detector, RandomSeed seed,
                                      int modes = 4, int photons = 3, double bin_width = 0.05);

} // namespace demonsim
