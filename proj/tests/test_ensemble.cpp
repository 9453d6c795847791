#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "demonsim/ensemble.hpp"
#include "demonsim/errors.hpp"

using namespace demonsim;

namespace {

OutcomeDistribution beamsplitter_pair() {
    ComplexMatrix h(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return full_distribution(UnitaryMatrix(h), InputConfiguration({0, 1}),
                             PhotonStatistics::indistinguishable);
}

} // namespace

TEST_CASE("detector model validation and the ideal predicate") {
    CHECK(DetectorModel::ideal(4).is_ideal());
    CHECK(DetectorModel({1.0, 1.0}).is_ideal());
    CHECK(!DetectorModel({1.0, 1.1}).is_ideal());
    CHECK_THROWS_AS(DetectorModel({}), DimensionError);
    CHECK_THROWS_AS(DetectorModel({1.0, 0.0}), DimensionError);
    CHECK_THROWS_AS(DetectorModel({1.0, -0.5}), DimensionError);
}

TEST_CASE("trial sampling is deterministic and follows the distribution") {
    const OutcomeDistribution dist = beamsplitter_pair();
    const std::size_t trials = 20000;
    const auto records = sample_trials(dist, trials, RandomSeed{9, 1}, 3);
    REQUIRE(records.size() == trials);

    std::size_t both_up = 0;
    std::size_t coincidence = 0;
    for (const auto& record : records) {
        CHECK(record.unitary_index == 3);
        if (record.outcome == OccupationVector({2, 0})) {
            ++both_up;
        } else if (record.outcome == OccupationVector({1, 1})) {
            ++coincidence;
        }
    }
    CHECK(coincidence == 0);
    const double sigma = std::sqrt(trials * 0.5 * 0.5);
    CHECK(std::abs(static_cast<double>(both_up) - trials * 0.5) < 5.0 * sigma);

    const auto again = sample_trials(dist, 50, RandomSeed{9, 1});
    const auto replay = sample_trials(dist, 50, RandomSeed{9, 1});
    const auto differs = sample_trials(dist, 50, RandomSeed{9, 2});
    bool identical = true;
    bool any_difference = false;
    for (std::size_t t = 0; t < 50; ++t) {
        identical = identical && again[t].outcome == replay[t].outcome;
        any_difference = any_difference || !(again[t].outcome == differs[t].outcome);
    }
    CHECK(identical);
    CHECK(any_difference);
}

TEST_CASE("mean counts and detector reconstruction") {
    const OutcomeDistribution dist = beamsplitter_pair();
    const std::vector<double> means = mean_counts(dist);
    REQUIRE(means.size() == 2);
    CHECK(means[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(means[1] == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> biased = apply_detector_bias({0.75, 0.75}, DetectorModel({1.4, 1.0}));
    CHECK(biased[0] == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(biased[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(biased[0] > 1.0);
    CHECK_THROWS_AS(apply_detector_bias({0.5}, DetectorModel({1.0, 1.0})), DimensionError);
}

TEST_CASE("stream layout separates unitary draws from trial draws") {
    const RandomSeed run{12, 0};
    CHECK(ensemble_unitary_seed(run, 0) == ensemble_unitary_seed(run, 0));
    CHECK(!(ensemble_unitary_seed(run, 0) == ensemble_trials_seed(run, 0)));
    CHECK(!(ensemble_unitary_seed(run, 1) == ensemble_unitary_seed(run, 0)));
    CHECK(ensemble_unitary_seed(run, 1) == run.substream(2));
    CHECK(ensemble_trials_seed(run, 1) == run.substream(3));
}

TEST_CASE("ensemble runs are reproducible and internally consistent") {
    const auto result = ensemble_delta_n(30, PhotonStatistics::indistinguishable, DemonMode::active,
                                         canonical_configuration(4), DetectorModel::ideal(4), 0,
                                         RandomSeed{21, 0});
    const auto repeat = ensemble_delta_n(30, PhotonStatistics::indistinguishable, DemonMode::active,
                                         canonical_configuration(4), DetectorModel::ideal(4), 0,
                                         RandomSeed{21, 0});
    CHECK(result.stats.mean == repeat.stats.mean);
    CHECK(result.stats.std_error == repeat.stats.std_error);
    CHECK(result.per_unitary_means == repeat.per_unitary_means);
    REQUIRE(result.per_unitary_means.size() == 30);
    CHECK(result.stats.unitary_count == 30);
    CHECK(result.stats.trials_per_unitary == 0);

    const double mean_of_means =
        std::accumulate(result.per_unitary_means.begin(), result.per_unitary_means.end(), 0.0) / 30.0;
    CHECK(result.stats.mean == doctest::Approx(mean_of_means).epsilon(1e-12));

    double total = 0.0;
    double bucket_mean = 0.0;
    for (const auto& [delta, p] : result.distribution.probs) {
        CHECK(delta >= -3);
        CHECK(delta <= 3);
        total += p;
        bucket_mean += delta * p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.distribution.mean == doctest::Approx(bucket_mean).epsilon(1e-12));
    CHECK(result.distribution.mean == doctest::Approx(result.stats.mean).epsilon(1e-9));
}

TEST_CASE("finite trial sampling adds only shot noise") {
    const auto exact = ensemble_delta_n(30, PhotonStatistics::distinguishable, DemonMode::active,
                                        canonical_configuration(4), DetectorModel::ideal(4), 0,
                                        RandomSeed{22, 0});
    const auto sampled = ensemble_delta_n(30, PhotonStatistics::distinguishable, DemonMode::active,
                                          canonical_configuration(4), DetectorModel::ideal(4), 2000,
                                          RandomSeed{22, 0});
    CHECK(sampled.stats.trials_per_unitary == 2000);
    CHECK(std::abs(sampled.stats.mean - exact.stats.mean) < 0.05);
}

TEST_CASE("large exact ensembles land on the analytic demon means") {
    const auto active = ensemble_delta_n(10000, PhotonStatistics::indistinguishable,
                                         DemonMode::active, canonical_configuration(4),
                                         DetectorModel::ideal(4), 0, RandomSeed{23, 0});
    CHECK(std::abs(active.stats.mean - 0.9) < 3.0 * active.stats.std_error);

    const auto passive = ensemble_delta_n(10000, PhotonStatistics::indistinguishable,
                                          DemonMode::passive, canonical_configuration(4),
                                          DetectorModel::ideal(4), 0, RandomSeed{23, 0});
    CHECK(std::abs(passive.stats.mean) < 3.0 * passive.stats.std_error);
}

TEST_CASE("standard error shrinks like the square root of the ensemble size") {
    const auto small = ensemble_delta_n(100, PhotonStatistics::indistinguishable, DemonMode::active,
                                        canonical_configuration(4), DetectorModel::ideal(4), 0,
                                        RandomSeed{24, 0});
    const auto large = ensemble_delta_n(400, PhotonStatistics::indistinguishable, DemonMode::active,
                                        canonical_configuration(4), DetectorModel::ideal(4), 0,
                                        RandomSeed{24, 0});
    const double ratio = small.stats.std_error / large.stats.std_error;
    CHECK(ratio > 2.0 * 0.7);
    CHECK(ratio < 2.0 * 1.3);
}

TEST_CASE("biased detectors shift the reported mean but not the raw count buckets") {
    const DetectorModel detector({1.0, 1.0, 0.92, 1.08});
    const auto biased = ensemble_delta_n(200, PhotonStatistics::indistinguishable, DemonMode::passive,
                                         canonical_configuration(4), detector, 0, RandomSeed{25, 0});
    const auto ideal = ensemble_delta_n(200, PhotonStatistics::indistinguishable, DemonMode::passive,
                                        canonical_configuration(4), DetectorModel::ideal(4), 0,
                                        RandomSeed{25, 0});
    CHECK(biased.stats.mean > ideal.stats.mean + 0.02);
    CHECK(biased.distribution.mean == doctest::Approx(ideal.distribution.mean).epsilon(1e-12));
    for (const auto& [delta, p] : biased.distribution.probs) {
        CHECK(p == doctest::Approx(ideal.distribution.probs.at(delta)).epsilon(1e-12));
    }
}

TEST_CASE("photon conservation holds per unitary until the detector breaks it") {
    const auto ideal = mode_flux_histogram(50, PhotonStatistics::indistinguishable,
                                           DetectorModel::ideal(4), RandomSeed{26, 0});
    for (std::size_t k = 0; k < 50; ++k) {
        double total = 0.0;
        for (int j = 0; j < 4; ++j) {
            total += ideal.per_unitary[static_cast<std::size_t>(j)][k];
        }
        CHECK(total == doctest::Approx(3.0).epsilon(1e-9));
    }

    const auto biased = mode_flux_histogram(50, PhotonStatistics::indistinguishable,
                                            DetectorModel({1.4, 1.0, 1.0, 1.0}), RandomSeed{26, 0});
    double max_total_defect = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
        double total = 0.0;
        for (int j = 0; j < 4; ++j) {
            total += biased.per_unitary[static_cast<std::size_t>(j)][k];
        }
        max_total_defect = std::max(max_total_defect, std::abs(total - 3.0));
    }
    CHECK(max_total_defect > 1e-3);
}

TEST_CASE("flux histogram structure and the miscalibration signature") {
    const DetectorModel detector({1.4, 1.0, 1.0, 1.0});
    const auto histogram = mode_flux_histogram(200, PhotonStatistics::indistinguishable, detector,
                                               RandomSeed{27, 0});
    REQUIRE(histogram.bin_edges.size() >= 2);
    REQUIRE(histogram.counts.size() == 4);
    REQUIRE(histogram.per_unitary.size() == 4);
    CHECK(histogram.bin_width == 0.05);
    for (std::size_t b = 0; b + 1 < histogram.bin_edges.size(); ++b) {
        CHECK(histogram.bin_edges[b + 1] - histogram.bin_edges[b] ==
              doctest::Approx(0.05).epsilon(1e-12));
    }
    for (int j = 0; j < 4; ++j) {
        long long total = 0;
        for (const long long c : histogram.counts[static_cast<std::size_t>(j)]) {
            total += c;
        }
        CHECK(total == 200);
        const auto& values = histogram.per_unitary[static_cast<std::size_t>(j)];
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / 200.0;
        CHECK(histogram.ensemble_means[static_cast<std::size_t>(j)] ==
              doctest::Approx(mean).epsilon(1e-12));
    }
    // factor 1.4 lifts the reconstructed mode-0 flux above one photon
    CHECK(histogram.ensemble_means[0] > 1.0);
    CHECK(histogram.ensemble_means[1] < 1.0);

    const auto repeat = mode_flux_histogram(200, PhotonStatistics::indistinguishable, detector,
                                            RandomSeed{27, 0});
    CHECK(repeat.ensemble_means == histogram.ensemble_means);
    CHECK_THROWS_AS(mode_flux_histogram(0, PhotonStatistics::indistinguishable,
                                        DetectorModel::ideal(4), RandomSeed{27, 0}),
                    DimensionError);
    CHECK_THROWS_AS(mode_flux_histogram(5, PhotonStatistics::indistinguishable,
                                        DetectorModel::ideal(3), RandomSeed{27, 0}),
                    DimensionError);
}
