#include "demonsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace demonsim {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string to_string(StatisticsLabel label) {
    switch (label) {
    case StatisticsLabel::distinguishable:
        return "distinguishable";
    case StatisticsLabel::indistinguishable:
        return "indistinguishable";
    case StatisticsLabel::partial:
        return "partial";
    }
    return "unknown";
}

Json unitary_to_json(const UnitaryMatrix& u) {
    Json entries = Json::array();
    for (int row = 0; row < u.dim(); ++row) {
        for (int col = 0; col < u.dim(); ++col) {
            entries.push_back(Json::array({u(row, col).real(), u(row, col).imag()}));
        }
    }
    return Json{{"dim", u.dim()}, {"entries", std::move(entries)}};
}

UnitaryMatrix unitary_from_json(const Json& j) {
    const Json& payload = unwrap_result(j);
    const int dim = payload.at("dim").get<int>();
    const Json& entries = payload.at("entries");
    if (dim <= 0 || static_cast<int>(entries.size()) != dim * dim) {
        throw DimensionError("unitary JSON entry count does not match dim^2");
    }
    ComplexMatrix m(dim, dim);
    for (int row = 0; row < dim; ++row) {
        for (int col = 0; col < dim; ++col) {
            const Json& cell = entries.at(static_cast<std::size_t>(row * dim + col));
            m(row, col) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return UnitaryMatrix(std::move(m));
}

Json gram_to_json(const DistinguishabilityModel& model) {
    Json entries = Json::array();
    for (int row = 0; row < model.photons(); ++row) {
        for (int col = 0; col < model.photons(); ++col) {
            entries.push_back(Json::array({model.overlap(row, col).real(), model.overlap(row, col).imag()}));
        }
    }
    return Json{{"photons", model.photons()}, {"entries", std::move(entries)}};
}

DistinguishabilityModel gram_from_json(const Json& j) {
    const Json& payload = unwrap_result(j);
    const int photons = payload.at("photons").get<int>();
    const Json& entries = payload.at("entries");
    if (photons <= 0 || static_cast<int>(entries.size()) != photons * photons) {
        throw DimensionError("Gram JSON entry count does not match photons^2");
    }
    ComplexMatrix m(photons, photons);
    for (int row = 0; row < photons; ++row) {
        for (int col = 0; col < photons; ++col) {
            const Json& cell = entries.at(static_cast<std::size_t>(row * photons + col));
            m(row, col) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return DistinguishabilityModel(std::move(m));
}

Json distribution_to_json(const OutcomeDistribution& dist) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        entries.push_back(Json{{"s", dist.outcomes[i].counts()}, {"p", dist.probs[i]}});
    }
    return Json{{"M", dist.modes}, {"N", dist.photons}, {"entries", std::move(entries)}};
}

Json distribution_to_json(const HaarAveragedDistribution& average) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < average.outcomes.size(); ++i) {
        Json entry{{"s", average.outcomes[i].counts()}, {"p", average.probs[i]}};
        if (average.is_exact()) {
            entry["numerator"] = average.exact_probs[i].numerator();
            entry["denominator"] = average.exact_probs[i].denominator();
        }
        if (!average.std_errors.empty()) {
            entry["std_error"] = average.std_errors[i];
        }
        entries.push_back(std::move(entry));
    }
    Json out{{"M", average.modes},
             {"N", average.photons},
             {"statistics", to_string(average.statistics)},
             {"entries", std::move(entries)}};
    if (average.ensemble_size > 0) {
        out["ensemble_size"] = average.ensemble_size;
    }
    return out;
}

OutcomeDistribution distribution_from_json(const Json& j) {
    const Json& payload = unwrap_result(j);
    OutcomeDistribution dist;
    dist.modes = payload.at("M").get<int>();
    dist.photons = payload.at("N").get<int>();
    dist.outcomes = enumerate_outcomes(dist.modes, dist.photons);
    dist.probs.assign(dist.outcomes.size(), 0.0);
    for (const Json& entry : payload.at("entries")) {
        const OccupationVector s(entry.at("s").get<std::vector<int>>());
        dist.probs[dist.index_of(s)] = entry.at("p").get<double>();
    }
    return dist;
}

std::string distribution_to_csv(const OutcomeDistribution& dist) {
    std::ostringstream out;
    out << "# M=" << dist.modes << "\n# N=" << dist.photons << "\n";
    for (int mode = 0; mode < dist.modes; ++mode) {
        out << "s_" << mode << ",";
    }
    out << "p\n";
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        for (const int count : dist.outcomes[i].counts()) {
            out << count << ",";
        }
        out << format_double(dist.probs[i]) << "\n";
    }
    return out.str();
}

OutcomeDistribution distribution_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
            continue;
        }
        std::vector<double> row;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            row.push_back(std::stod(field));
        }
        if (row.size() != columns) {
            throw DimensionError("CSV row width disagrees with header");
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen || rows.empty() || columns < 2) {
        throw DimensionError("CSV distribution is empty");
    }
    const int modes = static_cast<int>(columns) - 1;
    OutcomeDistribution dist;
    dist.modes = modes;
    std::vector<int> first_counts;
    for (int mode = 0; mode < modes; ++mode) {
        first_counts.push_back(static_cast<int>(rows.front()[static_cast<std::size_t>(mode)]));
    }
    dist.photons = OccupationVector(first_counts).total();
    dist.outcomes = enumerate_outcomes(dist.modes, dist.photons);
    dist.probs.assign(dist.outcomes.size(), 0.0);
    for (const auto& row : rows) {
        std::vector<int> counts;
        counts.reserve(static_cast<std::size_t>(modes));
        for (int mode = 0; mode < modes; ++mode) {
            counts.push_back(static_cast<int>(row[static_cast<std::size_t>(mode)]));
        }
        dist.probs[dist.index_of(OccupationVector(std::move(counts)))] = row.back();
    }
    return dist;
}

Json delta_n_to_json(const DeltaNDistribution& dist) {
    Json entries = Json::array();
    for (const auto& [delta, p] : dist.probs) {
        entries.push_back(Json{{"delta", delta}, {"p", p}});
    }
    return Json{{"entries", std::move(entries)}, {"mean", dist.mean}, {"std_error", dist.std_error}};
}

DeltaNDistribution delta_n_from_json(const Json& j) {
    const Json& payload = unwrap_result(j);
    DeltaNDistribution dist;
    for (const Json& entry : payload.at("entries")) {
        dist.probs.emplace(entry.at("delta").get<int>(), entry.at("p").get<double>());
    }
    dist.mean = payload.at("mean").get<double>();
    dist.std_error = payload.at("std_error").get<double>();
    return dist;
}

Json temperature_to_json(const TemperatureReport& report) {
    return Json{{"photon_density", report.photon_density},
                {"temperature_K", report.temperature},
                {"photon_energy_J", report.photon_energy}};
}

TemperatureReport temperature_from_json(const Json& j) {
    const Json& payload = unwrap_result(j);
    TemperatureReport report;
    report.photon_density = payload.at("photon_density").get<double>();
    report.temperature = payload.at("temperature_K").get<double>();
    report.photon_energy = payload.at("photon_energy_J").get<double>();
    return report;
}

Json flux_histogram_to_json(const ModeFluxHistogram& histogram) {
    Json modes = Json::array();
    for (std::size_t j = 0; j < histogram.counts.size(); ++j) {
        modes.push_back(Json{{"mode", j},
                             {"ensemble_mean", histogram.ensemble_means[j]},
                             {"counts", histogram.counts[j]},
                             {"per_unitary", histogram.per_unitary[j]}});
    }
    return Json{{"statistics", to_string(histogram.statistics == PhotonStatistics::indistinguishable
                                             ? StatisticsLabel::indistinguishable
                                             : StatisticsLabel::distinguishable)},
                {"bin_width", histogram.bin_width},
                {"bin_edges", histogram.bin_edges},
                {"modes", std::move(modes)}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DimensionError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) {
        throw DimensionError("cannot write file: " + path);
    }
    out << content;
}

Json load_json_file(const std::string& path) {
    return Json::parse(read_text_file(path));
}

const Json& unwrap_result(const Json& j) {
    if (j.is_object() && j.contains("result")) {
        return j.at("result");
    }
    return j;
}

} // namespace demonsim
