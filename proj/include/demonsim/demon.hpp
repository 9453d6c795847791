#pragma once

#include <map>
#include <span>
#include <utility>

#include "demonsim/haar_average.hpp"
#include "demonsim/rng.hpp"

namespace demonsim {

enum class DemonMode { passive, active };

// Split of the M output modes into halves A and B plus one analyzed mode per
// half. The demon compares subset photon totals and reports the count
// difference between the two analyzed modes.
struct ModeConfiguration {
    std::vector<int> subset_a;
    std::vector<int> subset_b;
    int measured_a = 0;
    int measured_b = 0;

    int modes() const { return static_cast<int>(subset_a.size() + subset_b.size()); }
    friend bool operator==(const ModeConfiguration&, const ModeConfiguration&) = default;
};

// Validates: M even, |subset_a| = M/2, measured modes inside their subsets.
// subset_b is the complement, derived here.
ModeConfiguration make_configuration(int modes, std::vector<int> subset_a, int measured_a,
                                     int measured_b);

// A = {0..M/2-1}, analyzed modes 0 and M/2.
ModeConfiguration canonical_configuration(int modes);

// Every (half-subset, analyzed pair) choice: C(M, M/2) x (M/2)^2 entries,
// 24 at M = 4. Deterministic order: subsets lexicographic, then measured_a,
// then measured_b ascending.
std::vector<ModeConfiguration> enumerate_configurations(int modes);

struct DeltaNDistribution {
    std::map<int, double> probs;
    double mean = 0.0;
    double std_error = 0.0;
};

DeltaNDistribution delta_n_passive(const OutcomeDistribution& dist, const ModeConfiguration& config);
DeltaNDistribution delta_n_active(const OutcomeDistribution& dist, const ModeConfiguration& config);

// Analytic overloads accumulate in exact rationals and convert each bucket
// once, so symmetric inputs give bit-exact symmetric outputs.
DeltaNDistribution delta_n_passive(const HaarAveragedDistribution& average,
                                   const ModeConfiguration& config);
DeltaNDistribution delta_n_active(const HaarAveragedDistribution& average,
                                  const ModeConfiguration& config);

// Mean count difference as reconstructed through per-mode detector scale
// factors r_j = f_j s_j: the swap decision (active mode) compares scaled
// subset totals and the reported difference uses scaled analyzed counts.
// An empty scale span means ideal detectors.
double delta_n_mean(const OutcomeDistribution& dist, const ModeConfiguration& config,
                    DemonMode mode, std::span<const double> detector_scale = {});

struct TemperatureReport {
    double photon_density = 0.0;
    double temperature = 0.0;
    double photon_energy = 0.0;
};

// Exact SI constants.
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kDefaultWavelengthM = 1550e-9;

double photon_energy_from_wavelength(double wavelength_m);

// T = (E/k_B) / ln(1 + 1/density); density 0 maps to T = 0 by continuity.
TemperatureReport effective_temperature(double density, double photon_energy);

// Single-mode marginal of the uniform N-in-M law,
// C(N-n+M-2, M-2)/C(N+M-1, N); the family the fit searches over.
double fit_family_probability(int n, int photons, int modes);

struct TemperatureFit {
    TemperatureReport report;
    int photons = 0;
    int modes = 0;
    double tv_distance = 0.0;
};

// Grid search 1 <= N <= max_photons, 2 <= M <= max_modes minimizing total
// variation distance to `observed` (indexed by photon number from 0); ties
// resolved toward smaller M, then smaller N.
TemperatureFit fit_temperature(const std::vector<double>& observed, double photon_energy,
                               int max_photons = 20, int max_modes = 20);

enum class DensityConvention {
    half_subset_total, // subset mean photon total over its 2 modes
    measured_mode,     // analyzed mode's mean count alone
};

// Effective temperatures of the A and B sides after optional switching.
std::pair<TemperatureReport, TemperatureReport> subset_temperatures(
    const OutcomeDistribution& dist, const ModeConfiguration& config, double photon_energy,
    DemonMode mode, DensityConvention convention = DensityConvention::half_subset_total);

struct RandomizedEstimate {
    double mean = 0.0;
    double std_dev = 0.0; // across round means, not divided by sqrt(rounds)
    int rounds = 0;
};

// Per round and per unitary draws a uniform ModeConfiguration, evaluates the
// mean count difference, and averages across unitaries; uniform analyzed-mode
// pairs make the passive expectation vanish identically, which is what
// suppresses fixed-partition detector bias.
RandomizedEstimate randomized_partition_estimate(std::span<const OutcomeDistribution> dists,
                                                 int rounds, DemonMode mode, RandomSeed seed,
                                                 std::span<const double> detector_scale = {});

struct SweepEntry {
    ModeConfiguration config;
    double mean = 0.0;
};

// Mean count difference for every configuration, averaged over the supplied
// per-unitary distributions.
std::vector<SweepEntry> configuration_sweep(std::span<const OutcomeDistribution> dists,
                                            DemonMode mode,
                                            std::span<const double> detector_scale = {});

// Mode-0 photon-number law after the 3-mode stage alone and after the
// composed 3-then-4-mode system, three photons in modes {0,1,2}.
std::pair<std::vector<double>, std::vector<double>> equilibration_pipeline(
    const UnitaryMatrix& u3, const UnitaryMatrix& u4, const DistinguishabilityModel& model);
std::pair<std::vector<double>, std::vector<double>> equilibration_pipeline(
    const UnitaryMatrix& u3, const UnitaryMatrix& u4, PhotonStatistics statistics);

} // namespace demonsim
