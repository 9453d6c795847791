#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "demonsim/characters.hpp"
#include "demonsim/errors.hpp"
#include "demonsim/haar.hpp"
#include "demonsim/partitions.hpp"
#include "demonsim/weingarten.hpp"
#include "oracles.hpp"

using namespace demonsim;

namespace {

Rational falling_product_inverse(int r, int d) {
    long long prod = 1;
    for (int i = 0; i < d; ++i) {
        prod *= (r + i);
    }
    return Rational(1, prod);
}

} // namespace

TEST_CASE("partition enumeration order and counts") {
    const auto parts3 = enumerate_partitions(3);
    REQUIRE(parts3.size() == 3);
    CHECK(parts3[0] == Partition({3}));
    CHECK(parts3[1] == Partition({2, 1}));
    CHECK(parts3[2] == Partition({1, 1, 1}));

    const int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (int d = 0; d <= 8; ++d) {
        CHECK(static_cast<int>(enumerate_partitions(d).size()) == expected[d]);
    }
    CHECK_THROWS_AS(Partition({2, 3}), DimensionError);
    CHECK_THROWS_AS(Partition({1, 0}), DimensionError);
}

TEST_CASE("hook length dimensions and the sum rule") {
    CHECK(hook_length_dimension(Partition({4})) == 1);
    CHECK(hook_length_dimension(Partition({3, 1})) == 3);
    CHECK(hook_length_dimension(Partition({2, 2})) == 2);
    CHECK(hook_length_dimension(Partition({2, 1, 1})) == 3);
    CHECK(hook_length_dimension(Partition({1, 1, 1, 1})) == 1);
    for (int d = 1; d <= 6; ++d) {
        long long total = 0;
        for (const auto& lambda : enumerate_partitions(d)) {
            const long long dim = hook_length_dimension(lambda);
            total += dim * dim;
        }
        CHECK(total == factorial(d));
    }
}

TEST_CASE("conjugacy class sizes partition the group order") {
    CHECK(conjugacy_class_size(Partition({2, 1})) == 3);
    CHECK(conjugacy_class_size(Partition({3})) == 2);
    for (int d = 1; d <= 6; ++d) {
        long long total = 0;
        for (const auto& type : enumerate_partitions(d)) {
            total += conjugacy_class_size(type);
        }
        CHECK(total == factorial(d));
    }
}

TEST_CASE("factorial and binomial basics") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == 2432902008176640000LL);
    CHECK_THROWS_AS(factorial(21), SizeError);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("shifted content product, including the vanishing case") {
    CHECK(shifted_content_product(Partition({2, 1}), 3) == 24);
    CHECK(shifted_content_product(Partition({1, 1, 1, 1}), 3) == 0);
    CHECK(shifted_content_product(Partition({2}), 2) == 6);
}

TEST_CASE("permutation helpers and cycle types") {
    CHECK(cycle_type(Permutation{0, 1, 2}) == Partition({1, 1, 1}));
    CHECK(cycle_type(Permutation{1, 0, 2}) == Partition({2, 1}));
    CHECK(cycle_type(Permutation{1, 2, 0}) == Partition({3}));

    const auto perms = all_permutations(3);
    REQUIRE(perms.size() == 6);
    CHECK(perms.front() == Permutation{0, 1, 2});
    CHECK(perms.back() == Permutation{2, 1, 0});
    for (const auto& p : perms) {
        const auto composed = compose_permutations(inverse_permutation(p), p);
        CHECK(composed == Permutation{0, 1, 2});
    }
}

TEST_CASE("characters of S_3 against the classical table") {
    const Partition id({1, 1, 1});
    const Partition swap({2, 1});
    const Partition cyc({3});
    CHECK(character(Partition({3}), id) == 1);
    CHECK(character(Partition({3}), swap) == 1);
    CHECK(character(Partition({3}), cyc) == 1);
    CHECK(character(Partition({2, 1}), id) == 2);
    CHECK(character(Partition({2, 1}), swap) == 0);
    CHECK(character(Partition({2, 1}), cyc) == -1);
    CHECK(character(Partition({1, 1, 1}), id) == 1);
    CHECK(character(Partition({1, 1, 1}), swap) == -1);
    CHECK(character(Partition({1, 1, 1}), cyc) == 1);
    CHECK_THROWS_AS(character(Partition({2, 1}), Partition({2})), DimensionError);
}

TEST_CASE("character identity column matches dimensions") {
    for (int d = 1; d <= 7; ++d) {
        const Partition id(std::vector<int>(static_cast<std::size_t>(d), 1));
        for (const auto& lambda : enumerate_partitions(d)) {
            CHECK(character(lambda, id) == hook_length_dimension(lambda));
        }
    }
}

TEST_CASE("character orthogonality over classes") {
    for (int d = 4; d <= 5; ++d) {
        const auto lambdas = enumerate_partitions(d);
        for (std::size_t a = 0; a < lambdas.size(); ++a) {
            for (std::size_t b = a; b < lambdas.size(); ++b) {
                long long total = 0;
                for (const auto& type : enumerate_partitions(d)) {
                    total += conjugacy_class_size(type) * character(lambdas[a], type) *
                             character(lambdas[b], type);
                }
                CHECK(total == (a == b ? factorial(d) : 0));
            }
        }
    }
}

TEST_CASE("column orthogonality against the identity column") {
    for (int d = 4; d <= 5; ++d) {
        const Partition id(std::vector<int>(static_cast<std::size_t>(d), 1));
        for (const auto& type : enumerate_partitions(d)) {
            long long total = 0;
            for (const auto& lambda : enumerate_partitions(d)) {
                total += character(lambda, id) * character(lambda, type);
            }
            CHECK(total == (type == id ? factorial(d) : 0));
        }
    }
}

TEST_CASE("weingarten values for degree 2 and 3 match the closed forms") {
    for (int r = 2; r <= 6; ++r) {
        const long long rr = r;
        CHECK(weingarten_exact(Partition({1, 1}), r, 2) == Rational(1, rr * rr - 1));
        CHECK(weingarten_exact(Partition({2}), r, 2) == Rational(-1, rr * (rr * rr - 1)));
    }
    CHECK(weingarten_exact(Partition({1, 1, 1}), 4, 3) == Rational(7, 360));
    CHECK(weingarten_exact(Partition({2, 1}), 4, 3) == Rational(-1, 180));
    CHECK(weingarten_exact(Partition({3}), 4, 3) == Rational(1, 360));
    CHECK_THROWS_AS(weingarten_exact(Partition({1, 1, 1}), 2, 3), DimensionError);
}

TEST_CASE("weingarten is a class function reached through cycle types") {
    WeingartenCache cache(5, 4);
    const Permutation p1{1, 0, 3, 2};
    const Permutation p2{3, 2, 1, 0};
    REQUIRE(cycle_type(p1) == cycle_type(p2));
    CHECK(weingarten(cycle_type(p1), 5, 4, cache) == weingarten(cycle_type(p2), 5, 4, cache));
    cache.precompute();
    CHECK(cache.exact_value(Partition({2, 2})) == weingarten_exact(Partition({2, 2}), 5, 4));
}

TEST_CASE("class-weighted weingarten sum collapses to the falling product") {
    for (int d = 1; d <= 5; ++d) {
        for (int r = d; r <= 8; ++r) {
            Rational total(0);
            for (const auto& type : enumerate_partitions(d)) {
                total += Rational(conjugacy_class_size(type)) * weingarten_exact(type, r, d);
            }
            CHECK(total == falling_product_inverse(r, d));
        }
    }
}

TEST_CASE("haar moments at low degree match the classical values") {
    for (int r = 2; r <= 5; ++r) {
        const double rd = r;
        const int one[] = {0};
        CHECK(haar_moment(one, one, one, one, r).real() == doctest::Approx(1.0 / rd).epsilon(1e-12));

        const int rows[] = {0, 0};
        const int cols01[] = {0, 1};
        CHECK(haar_moment(rows, rows, cols01, cols01, r).real() ==
              doctest::Approx(1.0 / (rd * (rd + 1.0))).epsilon(1e-12));

        const int rows01[] = {0, 1};
        CHECK(haar_moment(rows01, rows01, cols01, cols01, r).real() ==
              doctest::Approx(1.0 / (rd * rd - 1.0)).epsilon(1e-12));

        const int cols10[] = {1, 0};
        CHECK(haar_moment(rows01, rows01, cols01, cols10, r).real() ==
              doctest::Approx(-1.0 / (rd * (rd * rd - 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("haar moment vanishes when index multisets cannot be matched") {
    const int rows[] = {0, 0};
    const int rows_conj[] = {0, 1};
    const int cols[] = {0, 1};
    CHECK(std::abs(haar_moment(rows, rows_conj, cols, cols, 4)) == 0.0);
}

TEST_CASE("haar moment rejects mismatched lengths and large degree") {
    const int two[] = {0, 1};
    const int three[] = {0, 1, 2};
    CHECK_THROWS_AS(haar_moment(two, three, two, two, 4), DimensionError);
    const std::vector<int> nine(9, 0);
    CHECK_THROWS_AS(haar_moment(nine, nine, nine, nine, 12), SizeError);
}

TEST_CASE("haar moments agree with monte carlo integration") {
    struct Case {
        std::vector<int> rows, rows_conj, cols, cols_conj;
    };
    const int r = 4;
    const std::vector<Case> cases = {
        {{0, 1, 1}, {1, 0, 1}, {2, 0, 2}, {0, 2, 2}},
        {{0, 0, 2}, {0, 2, 0}, {1, 1, 3}, {1, 3, 1}},
        {{0, 1}, {1, 0}, {2, 3}, {3, 2}},
    };
    const int samples = 100000;
    for (const auto& c : cases) {
        std::vector<double> re_values, im_values;
        re_values.reserve(samples);
        im_values.reserve(samples);
        for (int k = 0; k < samples; ++k) {
            const UnitaryMatrix u =
                sample_haar(r, RandomSeed{404, 0}.substream(static_cast<std::uint64_t>(k)));
            Complex term(1.0, 0.0);
            for (std::size_t i = 0; i < c.rows.size(); ++i) {
                term *= u(c.rows[i], c.cols[i]);
            }
            for (std::size_t i = 0; i < c.rows_conj.size(); ++i) {
                term *= std::conj(u(c.rows_conj[i], c.cols_conj[i]));
            }
            re_values.push_back(term.real());
            im_values.push_back(term.imag());
        }
        const auto re_stats = oracles::summarize(re_values);
        const auto im_stats = oracles::summarize(im_values);
        const Complex exact = haar_moment(c.rows, c.rows_conj, c.cols, c.cols_conj, r);
        CHECK(std::abs(re_stats.mean - exact.real()) < 3.0 * re_stats.std_error);
        CHECK(std::abs(im_stats.mean - exact.imag()) < 3.0 * im_stats.std_error);
    }
}
