#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "demonsim/ensemble.hpp"
#include "demonsim/errors.hpp"
#include "demonsim/haar.hpp"
#include "demonsim/io.hpp"

using namespace demonsim;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "demonsim_io_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("format_double emits shortest decimals that parse back exactly") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.0) == "0");
    for (const double value : {1.0 / 3.0, 0.05, 1e-300, 123456.789, -0.924, 13391.717845939565}) {
        const std::string text = format_double(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
    }
}

TEST_CASE("unitary JSON round-trips bitwise and validates on read") {
    const UnitaryMatrix u = sample_haar(4, RandomSeed{301, 0});
    const Json j = unitary_to_json(u);
    const UnitaryMatrix back = unitary_from_json(j);
    CHECK(back.entries() == u.entries());

    Json corrupted = j;
    corrupted["entries"][0] = Json::array({2.0, 0.0});
    CHECK_THROWS_AS(unitary_from_json(corrupted), NumericalError);
    Json truncated = j;
    truncated["entries"].erase(0);
    CHECK_THROWS_AS(unitary_from_json(truncated), DimensionError);
}

TEST_CASE("gram JSON round-trips bitwise") {
    const auto model = DistinguishabilityModel::uniform_overlap(3, 0.37);
    const DistinguishabilityModel back = gram_from_json(gram_to_json(model));
    CHECK(back.gram() == model.gram());
}

TEST_CASE("distribution JSON round-trips and fills missing outcomes with zero") {
    const UnitaryMatrix u = sample_haar(4, RandomSeed{302, 0});
    const OutcomeDistribution dist =
        full_distribution(u, InputConfiguration({0, 1, 2}), PhotonStatistics::indistinguishable);
    const Json j = distribution_to_json(dist);
    const OutcomeDistribution back = distribution_from_json(j);
    CHECK(back.modes == dist.modes);
    CHECK(back.photons == dist.photons);
    CHECK(back.probs == dist.probs);

    Json sparse = j;
    sparse["entries"].erase(0);
    const OutcomeDistribution filled = distribution_from_json(sparse);
    CHECK(filled.probs.size() == dist.probs.size());
    CHECK(filled.probs[0] == 0.0);
    CHECK(filled.probs[1] == dist.probs[1]);
}

TEST_CASE("analytic average JSON carries the exact fractions") {
    const Json j = distribution_to_json(haar_average_indist(4, 3));
    CHECK(j.at("statistics") == "indistinguishable");
    CHECK(j.at("entries").size() == 20);
    CHECK(j.at("entries")[0].at("numerator") == 1);
    CHECK(j.at("entries")[0].at("denominator") == 20);
    CHECK(j.at("entries")[0].at("p") == 0.05);
    const OutcomeDistribution back = distribution_from_json(j);
    CHECK(back.probs[7] == 0.05);

    const auto ensemble = sample_haar_ensemble(4, 10, RandomSeed{303, 0});
    const Json empirical = distribution_to_json(haar_average_empirical(
        ensemble, InputConfiguration({0, 1, 2}), PhotonStatistics::distinguishable));
    CHECK(empirical.at("ensemble_size") == 10);
    CHECK(empirical.at("entries")[0].contains("std_error"));
    CHECK(!empirical.at("entries")[0].contains("numerator"));
}

TEST_CASE("distribution CSV round-trips through the shortest decimal forms") {
    const UnitaryMatrix u = sample_haar(4, RandomSeed{304, 0});
    const OutcomeDistribution dist =
        full_distribution(u, InputConfiguration({0, 1, 2}), PhotonStatistics::distinguishable);
    const std::string csv = distribution_to_csv(dist);
    CHECK(csv.rfind("# M=4", 0) == 0);
    const OutcomeDistribution back = distribution_from_csv(csv);
    CHECK(back.modes == 4);
    CHECK(back.photons == 3);
    CHECK(back.probs == dist.probs);
    CHECK_THROWS_AS(distribution_from_csv("# M=4\n"), DimensionError);
}

TEST_CASE("count-difference JSON round-trips bitwise") {
    const DeltaNDistribution law =
        delta_n_active(haar_average_indist(4, 3), canonical_configuration(4));
    const DeltaNDistribution back = delta_n_from_json(delta_n_to_json(law));
    CHECK(back.probs == law.probs);
    CHECK(back.mean == law.mean);
    CHECK(back.std_error == law.std_error);
}

TEST_CASE("temperature JSON round-trips bitwise") {
    const TemperatureReport report =
        effective_temperature(0.75, photon_energy_from_wavelength(kDefaultWavelengthM));
    const TemperatureReport back = temperature_from_json(temperature_to_json(report));
    CHECK(back.photon_density == report.photon_density);
    CHECK(back.temperature == report.temperature);
    CHECK(back.photon_energy == report.photon_energy);
}

TEST_CASE("flux histogram JSON exposes per-mode counts and means") {
    const auto histogram = mode_flux_histogram(20, PhotonStatistics::indistinguishable,
                                               DetectorModel::ideal(4), RandomSeed{305, 0});
    const Json j = flux_histogram_to_json(histogram);
    CHECK(j.at("bin_width") == histogram.bin_width);
    CHECK(j.at("modes").size() == 4);
    CHECK(j.at("modes")[2].at("mode") == 2);
    CHECK(j.at("modes")[2].at("ensemble_mean") == histogram.ensemble_means[2]);
    CHECK(j.at("modes")[0].at("per_unitary").size() == 20);
    CHECK(j.at("bin_edges").size() == histogram.bin_edges.size());
}

TEST_CASE("text files round-trip, creating parent directories on demand") {
    const auto path = scratch_dir() / "nested" / "payload.json";
    std::filesystem::remove_all(scratch_dir() / "nested");
    const std::string content = "{\"answer\": 42}\n";
    write_text_file(path.string(), content);
    CHECK(read_text_file(path.string()) == content);
    CHECK(load_json_file(path.string()).at("answer") == 42);
    CHECK_THROWS_AS(read_text_file((scratch_dir() / "absent.json").string()), DimensionError);
}

TEST_CASE("result envelopes unwrap to their payload") {
    const Json bare = Json{{"M", 4}};
    CHECK(&unwrap_result(bare) == &bare);
    const Json wrapped = Json{{"command", "x"}, {"config", Json::object()}, {"result", Json{{"M", 4}}}};
    CHECK(unwrap_result(wrapped).at("M") == 4);
    const UnitaryMatrix u = sample_haar(3, RandomSeed{306, 0});
    const Json envelope = Json{{"command", "haar-gen"}, {"result", unitary_to_json(u)}};
    CHECK(unitary_from_json(envelope).entries() == u.entries());
}
