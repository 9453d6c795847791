#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "demonsim/errors.hpp"
#include "demonsim/haar.hpp"
#include "demonsim/haar_average.hpp"

using namespace demonsim;

TEST_CASE("identical photons average to the uniform outcome law") {
    for (const auto [modes, photons, support] :
         {std::tuple{3, 3, 10LL}, std::tuple{4, 3, 20LL}, std::tuple{5, 4, 70LL}}) {
        const HaarAveragedDistribution avg = haar_average_indist(modes, photons);
        REQUIRE(avg.is_exact());
        REQUIRE(static_cast<long long>(avg.outcomes.size()) == support);
        Rational total(0);
        for (std::size_t k = 0; k < avg.outcomes.size(); ++k) {
            CHECK(avg.exact_probs[k] == Rational(1, support));
            total += avg.exact_probs[k];
        }
        CHECK(total == Rational(1));
        CHECK(avg.statistics == StatisticsLabel::indistinguishable);
    }
}

TEST_CASE("distinguishable average depends only on the occupancy type") {
    const HaarAveragedDistribution avg = haar_average_dist(4, 3);
    REQUIRE(avg.is_exact());
    REQUIRE(avg.outcomes.size() == 20);

    std::map<std::vector<int>, Rational> by_type;
    Rational total(0);
    for (std::size_t k = 0; k < avg.outcomes.size(); ++k) {
        const auto type = avg.outcomes[k].occupancy_type();
        const auto it = by_type.find(type);
        if (it == by_type.end()) {
            by_type.emplace(type, avg.exact_probs[k]);
        } else {
            CHECK(it->second == avg.exact_probs[k]);
        }
        total += avg.exact_probs[k];
    }
    CHECK(total == Rational(1));

    REQUIRE(by_type.size() == 3);
    CHECK(by_type.at({1, 1, 1, 0}) == Rational(7, 60));
    CHECK(by_type.at({2, 1, 0, 0}) == Rational(1, 24));
    CHECK(by_type.at({3, 0, 0, 0}) == Rational(1, 120));
    CHECK(avg.statistics == StatisticsLabel::distinguishable);
}

TEST_CASE("one photon cannot interfere: both averages coincide exactly") {
    for (int modes = 2; modes <= 5; ++modes) {
        const auto indist = haar_average_indist(modes, 1);
        const auto dist = haar_average_dist(modes, 1);
        REQUIRE(indist.outcomes.size() == dist.outcomes.size());
        for (std::size_t k = 0; k < indist.outcomes.size(); ++k) {
            CHECK(indist.exact_probs[k] == dist.exact_probs[k]);
        }
    }
}

TEST_CASE("analytic averages convert to plain distributions") {
    const HaarAveragedDistribution avg = haar_average_indist(4, 3);
    const OutcomeDistribution dist = avg.to_distribution();
    CHECK(dist.modes == 4);
    CHECK(dist.photons == 3);
    REQUIRE(dist.probs.size() == 20);
    CHECK(dist.probs[0] == 0.05);
    CHECK(dist.prob_of(OccupationVector({1, 1, 1, 0})) == 0.05);
}

TEST_CASE("empirical averages converge to the analytic law") {
    const std::size_t count = 100000;
    const auto ensemble = sample_haar_ensemble(4, count, RandomSeed{1234, 0});
    const InputConfiguration input({0, 1, 2});

    for (const PhotonStatistics stats :
         {PhotonStatistics::indistinguishable, PhotonStatistics::distinguishable}) {
        const HaarAveragedDistribution empirical = haar_average_empirical(ensemble, input, stats);
        const HaarAveragedDistribution analytic = stats == PhotonStatistics::indistinguishable
                                                      ? haar_average_indist(4, 3)
                                                      : haar_average_dist(4, 3);
        REQUIRE(!empirical.is_exact());
        REQUIRE(empirical.ensemble_size == count);
        REQUIRE(empirical.probs.size() == analytic.probs.size());
        REQUIRE(empirical.std_errors.size() == empirical.probs.size());

        double tv = 0.0;
        for (std::size_t k = 0; k < empirical.probs.size(); ++k) {
            tv += std::abs(empirical.probs[k] - analytic.probs[k]);
            CHECK(empirical.std_errors[k] > 0.0);
            CHECK(std::abs(empirical.probs[k] - analytic.probs[k]) <
                  5.0 * empirical.std_errors[k] + 1e-12);
        }
        tv /= 2.0;
        CHECK(tv < 0.01);
    }
}

TEST_CASE("empirical averaging with a gram input is labeled partial") {
    const auto ensemble = sample_haar_ensemble(4, 30, RandomSeed{77, 3});
    const auto model = DistinguishabilityModel::uniform_overlap(3, 0.5);
    const HaarAveragedDistribution avg =
        haar_average_empirical(ensemble, InputConfiguration({0, 1, 2}), model);
    CHECK(avg.statistics == StatisticsLabel::partial);
    const double total = std::accumulate(avg.probs.begin(), avg.probs.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-mode marginal of the uniform law, closed form vs summation") {
    for (const auto [modes, photons] : {std::pair{3, 3}, std::pair{4, 3}, std::pair{5, 4}}) {
        const auto summed = exact_marginal(haar_average_indist(modes, photons), 0);
        const auto closed = uniform_law_marginal(modes, photons);
        REQUIRE(summed.size() == closed.size());
        Rational total(0);
        for (std::size_t n = 0; n < summed.size(); ++n) {
            CHECK(summed[n] == closed[n]);
            total += closed[n];
        }
        CHECK(total == Rational(1));
    }
    const auto marginal33 = uniform_law_marginal(3, 3);
    CHECK(marginal33[0] == Rational(2, 5));
    CHECK(marginal33[1] == Rational(3, 10));
    CHECK(marginal33[2] == Rational(1, 5));
    CHECK(marginal33[3] == Rational(1, 10));
    const auto marginal43 = uniform_law_marginal(4, 3);
    CHECK(marginal43[0] == Rational(1, 2));
    CHECK(marginal43[1] == Rational(3, 10));
    CHECK(marginal43[2] == Rational(3, 20));
    CHECK(marginal43[3] == Rational(1, 20));
}

TEST_CASE("marginals are permutation invariant across modes") {
    const auto avg = haar_average_dist(4, 3);
    const auto mode0 = exact_marginal(avg, 0);
    for (int mode = 1; mode < 4; ++mode) {
        const auto other = exact_marginal(avg, mode);
        for (std::size_t n = 0; n < mode0.size(); ++n) {
            CHECK(mode0[n] == other[n]);
        }
    }
}

TEST_CASE("analytic averages reject unsupported shapes") {
    CHECK_THROWS_AS(haar_average_dist(3, 4), DimensionError);
    CHECK_THROWS_AS(haar_average_dist(8, 7), SizeError);
    CHECK_THROWS_AS(haar_average_indist(0, 3), DimensionError);
    const std::vector<UnitaryMatrix> empty;
    CHECK_THROWS_AS(haar_average_empirical(empty, InputConfiguration({0, 1, 2}),
                                           PhotonStatistics::indistinguishable),
                    DimensionError);
}
