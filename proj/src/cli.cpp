#include "demonsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demonsim/io.hpp"

namespace demonsim::cli {

namespace {

struct CommonOptions {
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--seed", common.seed, "Base RNG seed")->capture_default_str();
    cmd->add_option("--output", common.output, "Output path (default: stdout)");
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

// Every run writes one artifact that embeds the resolved configuration:
// JSON as {"command", "config", "result"}, CSV as "# key=value" comments
// ahead of the columns.
void emit(const CommonOptions& common, const std::string& command, const Json& config,
          const Json& result, const std::string& csv_payload) {
    std::string text;
    if (common.format == "json") {
        Json envelope;
        envelope["command"] = command;
        envelope["config"] = config;
        envelope["result"] = result;
        text = envelope.dump(2) + "\n";
    } else {
        std::ostringstream head;
        head << "# command=" << command << "\n";
        for (const auto& [key, value] : config.items()) {
            head << "# " << key << "="
                 << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
        text = head.str() + csv_payload;
    }
    if (common.output.empty()) {
        std::cout << text;
    } else {
        write_text_file(common.output, text);
    }
}

Json common_config(const CommonOptions& common) {
    return Json{{"seed", common.seed}, {"format", common.format}};
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        values.push_back(std::stoi(field));
    }
    if (values.empty()) {
        throw DimensionError("expected a comma-separated integer list");
    }
    return values;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        values.push_back(std::stod(field));
    }
    if (values.empty()) {
        throw DimensionError("expected a comma-separated number list");
    }
    return values;
}

PhotonStatistics parse_statistics(const std::string& text) {
    if (text == "indist") {
        return PhotonStatistics::indistinguishable;
    }
    if (text == "dist") {
        return PhotonStatistics::distinguishable;
    }
    throw DimensionError("statistics must be 'indist' or 'dist'");
}

DemonMode parse_mode(const std::string& text) {
    if (text == "passive") {
        return DemonMode::passive;
    }
    if (text == "active") {
        return DemonMode::active;
    }
    throw DimensionError("mode must be 'passive' or 'active'");
}

std::string join_ints(const std::vector<int>& values, char separator) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out.push_back(separator);
        }
        out += std::to_string(values[i]);
    }
    return out;
}

// Stream layout shared by all commands: substream 0 feeds unitary ensembles,
// substream 1 feeds randomization rounds (and the second ensemble of the
// equilibration pipeline).
RandomSeed ensemble_seed(const CommonOptions& common) {
    return RandomSeed{common.seed, 0}.substream(0);
}

RandomSeed secondary_seed(const CommonOptions& common) {
    return RandomSeed{common.seed, 0}.substream(1);
}

ModeConfiguration config_from_flags(int modes, const std::string& subset_a, int measured_a,
                                    int measured_b) {
    if (subset_a.empty()) {
        ModeConfiguration canonical = canonical_configuration(modes);
        if (measured_a >= 0 || measured_b >= 0) {
            throw DimensionError("--measured-a/--measured-b require --subset-a");
        }
        return canonical;
    }
    if (measured_a < 0 || measured_b < 0) {
        throw DimensionError("--subset-a requires --measured-a and --measured-b");
    }
    return make_configuration(modes, parse_int_list(subset_a), measured_a, measured_b);
}

struct HaarGenCommand {
    CommonOptions common;
    int dim = 4;
    int count = 1;

    void run() const {
        Json config = common_config(common);
        config["dim"] = dim;
        config["count"] = count;
        Json unitaries = Json::array();
        std::ostringstream csv;
        csv << "unitary,row,col,re,im\n";
        const auto ensemble =
            sample_haar_ensemble(dim, static_cast<std::size_t>(count), RandomSeed{common.seed, 0});
        for (std::size_t k = 0; k < ensemble.size(); ++k) {
            unitaries.push_back(unitary_to_json(ensemble[k]));
            for (int row = 0; row < dim; ++row) {
                for (int col = 0; col < dim; ++col) {
                    csv << k << ',' << row << ',' << col << ','
                        << format_double(ensemble[k](row, col).real()) << ','
                        << format_double(ensemble[k](row, col).imag()) << "\n";
                }
            }
        }
        emit(common, "haar-gen", config, Json{{"unitaries", std::move(unitaries)}}, csv.str());
    }
};

struct WeingartenCommand {
    CommonOptions common;
    int unitary_dim = 4;
    int degree = 3;

    void run() const {
        Json config = common_config(common);
        config["R"] = unitary_dim;
        config["d"] = degree;
        WeingartenCache cache(unitary_dim, degree);
        Json values = Json::array();
        std::ostringstream csv;
        csv << "cycle_type,numerator,denominator,value\n";
        for (const Partition& type : enumerate_partitions(degree)) {
            const Rational value = cache.exact_value(type);
            values.push_back(Json{{"cycle_type", type.parts()},
                                  {"numerator", value.numerator()},
                                  {"denominator", value.denominator()},
                                  {"value", boost::rational_cast<double>(value)}});
            csv << join_ints(type.parts(), '+') << ',' << value.numerator() << ','
                << value.denominator() << ',' << format_double(boost::rational_cast<double>(value))
                << "\n";
        }
        emit(common, "weingarten", config, Json{{"values", std::move(values)}}, csv.str());
    }
};

struct OutcomeProbsCommand {
    CommonOptions common;
    std::string unitary_file;
    int haar_dim = 0;
    std::string input = "0,1,2";
    std::string statistics = "indist";
    std::string gram_file;

    void run() const {
        Json config = common_config(common);
        UnitaryMatrix u = [&] {
            if (!unitary_file.empty()) {
                config["unitary"] = unitary_file;
                return unitary_from_json(load_json_file(unitary_file));
            }
            if (haar_dim <= 0) {
                throw DimensionError("provide --unitary FILE or --haar-dim M");
            }
            config["haar_dim"] = haar_dim;
            return sample_haar(haar_dim, ensemble_seed(common));
        }();
        const InputConfiguration in(parse_int_list(input));
        config["input"] = in.modes();
        config["statistics"] = statistics;
        OutcomeDistribution dist = [&] {
            if (!gram_file.empty()) {
                config["gram"] = gram_file;
                return full_distribution(u, in, gram_from_json(load_json_file(gram_file)));
            }
            return full_distribution(u, in, parse_statistics(statistics));
        }();
        emit(common, "outcome-probs", config, distribution_to_json(dist),
             distribution_to_csv(dist));
    }
};

struct HaarAverageCommand {
    CommonOptions common;
    int modes = 4;
    int photons = 3;
    std::string statistics = "indist";

    void run() const {
        Json config = common_config(common);
        config["M"] = modes;
        config["N"] = photons;
        config["statistics"] = statistics;
        const HaarAveragedDistribution average =
            parse_statistics(statistics) == PhotonStatistics::indistinguishable
                ? haar_average_indist(modes, photons)
                : haar_average_dist(modes, photons);
        emit(common, "haar-average", config, distribution_to_json(average),
             distribution_to_csv(average.to_distribution()));
    }
};

// Shared ensemble-style inputs of the demon subcommands.
struct DemonInputs {
    int modes = 4;
    int photons = 3;
    std::string statistics = "indist";
    bool analytic = false;
    int unitaries = 0;
    std::string detector;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--M", modes, "Mode count")->capture_default_str();
        cmd->add_option("--N", photons, "Photon count")->capture_default_str();
        cmd->add_option("--statistics", statistics, "indist or dist")->capture_default_str();
        cmd->add_flag("--analytic", analytic, "Use the exact Haar-averaged distribution");
        cmd->add_option("--unitaries", unitaries, "Haar ensemble size");
        cmd->add_option("--detector", detector,
                        "Comma-separated per-mode detector scale factors");
    }

    void echo(Json& config) const {
        config["M"] = modes;
        config["N"] = photons;
        config["statistics"] = statistics;
        config["analytic"] = analytic;
        if (unitaries > 0) {
            config["unitaries"] = unitaries;
        }
        if (!detector.empty()) {
            config["detector"] = detector;
        }
    }

    std::vector<double> scale_factors() const {
        if (detector.empty()) {
            return {};
        }
        const DetectorModel model(parse_double_list(detector));
        if (model.modes() != modes) {
            throw DimensionError("detector factor count must match --M");
        }
        return model.factors();
    }

    HaarAveragedDistribution analytic_average() const {
        return parse_statistics(statistics) == PhotonStatistics::indistinguishable
                   ? haar_average_indist(modes, photons)
                   : haar_average_dist(modes, photons);
    }

    std::vector<OutcomeDistribution> per_unitary(const CommonOptions& common) const {
        if (analytic) {
            return {analytic_average().to_distribution()};
        }
        if (unitaries <= 0) {
            throw DimensionError("provide --analytic or --unitaries K");
        }
        const PhotonStatistics stat = parse_statistics(statistics);
        const InputConfiguration in = InputConfiguration::first_modes(photons);
        std::vector<OutcomeDistribution> dists;
        dists.reserve(static_cast<std::size_t>(unitaries));
        for (std::size_t k = 0; k < static_cast<std::size_t>(unitaries); ++k) {
            dists.push_back(full_distribution(
                sample_haar(modes, ensemble_unitary_seed(ensemble_seed(common), k)), in, stat));
        }
        return dists;
    }
};

struct DemonRunCommand {
    CommonOptions common;
    DemonInputs inputs;
    std::string mode = "active";
    std::string subset_a;
    int measured_a = -1;
    int measured_b = -1;
    int trials = 0;

    void run() const {
        Json config = common_config(common);
        inputs.echo(config);
        config["mode"] = mode;
        const ModeConfiguration mc =
            config_from_flags(inputs.modes, subset_a, measured_a, measured_b);
        config["subset_a"] = mc.subset_a;
        config["measured_a"] = mc.measured_a;
        config["measured_b"] = mc.measured_b;
        const DemonMode demon_mode = parse_mode(mode);
        if (inputs.analytic) {
            if (!inputs.detector.empty() || trials > 0) {
                throw DimensionError("--analytic excludes --detector and --trials");
            }
            const HaarAveragedDistribution average = inputs.analytic_average();
            const DeltaNDistribution delta = demon_mode == DemonMode::active
                                                 ? delta_n_active(average, mc)
                                                 : delta_n_passive(average, mc);
            emit(common, "demon-run", config, delta_n_to_json(delta), delta_csv(delta));
            return;
        }
        if (inputs.unitaries <= 0) {
            throw DimensionError("provide --analytic or --unitaries K");
        }
        config["trials"] = trials;
        const std::vector<double> factors = inputs.scale_factors();
        const DetectorModel detector =
            factors.empty() ? DetectorModel::ideal(inputs.modes) : DetectorModel(factors);
        const EnsembleDeltaN result = ensemble_delta_n(
            static_cast<std::size_t>(inputs.unitaries), parse_statistics(inputs.statistics),
            demon_mode, mc, detector, static_cast<std::size_t>(trials), ensemble_seed(common),
            inputs.modes, inputs.photons);
        Json json{{"stats",
                   Json{{"mean", result.stats.mean},
                        {"std_error", result.stats.std_error},
                        {"unitary_count", result.stats.unitary_count},
                        {"trials_per_unitary", result.stats.trials_per_unitary}}},
                  {"distribution", delta_n_to_json(result.distribution)},
                  {"per_unitary_means", result.per_unitary_means}};
        std::ostringstream csv;
        csv << "# mean=" << format_double(result.stats.mean)
            << "\n# std_error=" << format_double(result.stats.std_error) << "\n"
            << delta_csv(result.distribution);
        emit(common, "demon-run", config, std::move(json), csv.str());
    }

    static std::string delta_csv(const DeltaNDistribution& delta) {
        std::ostringstream csv;
        csv << "delta,p\n";
        for (const auto& [value, p] : delta.probs) {
            csv << value << ',' << format_double(p) << "\n";
        }
        return csv.str();
    }
};

struct DemonSweepCommand {
    CommonOptions common;
    DemonInputs inputs;
    std::string mode = "active";

    void run() const {
        Json config = common_config(common);
        inputs.echo(config);
        config["mode"] = mode;
        const auto dists = inputs.per_unitary(common);
        const std::vector<double> factors = inputs.scale_factors();
        const auto entries = configuration_sweep(dists, parse_mode(mode), factors);
        Json json = Json::array();
        std::ostringstream csv;
        csv << "subset_a,measured_a,measured_b,mean\n";
        for (const SweepEntry& entry : entries) {
            json.push_back(Json{{"subset_a", entry.config.subset_a},
                                {"measured_a", entry.config.measured_a},
                                {"measured_b", entry.config.measured_b},
                                {"mean", entry.mean}});
            csv << join_ints(entry.config.subset_a, '+') << ',' << entry.config.measured_a << ','
                << entry.config.measured_b << ',' << format_double(entry.mean) << "\n";
        }
        emit(common, "demon-sweep", config, Json{{"entries", std::move(json)}}, csv.str());
    }
};

struct DemonRandomizeCommand {
    CommonOptions common;
    DemonInputs inputs;
    std::string mode = "passive";
    int rounds = 1000;

    void run() const {
        Json config = common_config(common);
        inputs.echo(config);
        config["mode"] = mode;
        config["rounds"] = rounds;
        const auto dists = inputs.per_unitary(common);
        const std::vector<double> factors = inputs.scale_factors();
        const RandomizedEstimate estimate = randomized_partition_estimate(
            dists, rounds, parse_mode(mode), secondary_seed(common), factors);
        Json json{{"mean", estimate.mean},
                  {"std_dev", estimate.std_dev},
                  {"rounds", estimate.rounds}};
        std::ostringstream csv;
        csv << "mean,std_dev,rounds\n"
            << format_double(estimate.mean) << ',' << format_double(estimate.std_dev) << ','
            << estimate.rounds << "\n";
        emit(common, "demon-randomize", config, std::move(json), csv.str());
    }
};

struct EquilibrateCommand {
    CommonOptions common;
    std::string statistics = "indist";
    int unitaries = 50;
    bool identity = false;

    void run() const {
        Json config = common_config(common);
        config["statistics"] = statistics;
        config["identity"] = identity;
        const PhotonStatistics stat = parse_statistics(statistics);
        std::vector<std::vector<double>> stage1;
        std::vector<std::vector<double>> stage2;
        if (identity) {
            const auto [first, second] = equilibration_pipeline(UnitaryMatrix::identity(3),
                                                                UnitaryMatrix::identity(4), stat);
            stage1.push_back(first);
            stage2.push_back(second);
        } else {
            if (unitaries <= 0) {
                throw DimensionError("--unitaries must be positive");
            }
            config["unitaries"] = unitaries;
            for (std::size_t k = 0; k < static_cast<std::size_t>(unitaries); ++k) {
                const UnitaryMatrix u3 = sample_haar(3, ensemble_seed(common).substream(k));
                const UnitaryMatrix u4 = sample_haar(4, secondary_seed(common).substream(k));
                const auto [first, second] = equilibration_pipeline(u3, u4, stat);
                stage1.push_back(first);
                stage2.push_back(second);
            }
        }
        const auto analytic1 = uniform_law_marginal(3, 3);
        const auto analytic2 = uniform_law_marginal(4, 3);
        Json json;
        std::ostringstream csv;
        csv << "stage,n,analytic_indist,empirical_mean,empirical_std_error\n";
        const auto summarize = [&](const std::string& name,
                                   const std::vector<std::vector<double>>& samples,
                                   const std::vector<Rational>& analytic, int stage_index) {
            Json stage;
            Json empirical = Json::array();
            Json std_errors = Json::array();
            Json analytic_json = Json::array();
            for (std::size_t n = 0; n < samples.front().size(); ++n) {
                double sum = 0.0;
                double sum_sq = 0.0;
                for (const auto& sample : samples) {
                    sum += sample[n];
                    sum_sq += sample[n] * sample[n];
                }
                const double k = static_cast<double>(samples.size());
                const double mean = sum / k;
                double std_error = 0.0;
                if (samples.size() > 1) {
                    std_error = std::sqrt(std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0)) / k);
                }
                const double analytic_value = boost::rational_cast<double>(analytic[n]);
                empirical.push_back(mean);
                std_errors.push_back(std_error);
                analytic_json.push_back(analytic_value);
                csv << stage_index << ',' << n << ',' << format_double(analytic_value) << ','
                    << format_double(mean) << ',' << format_double(std_error) << "\n";
            }
            stage["analytic_indist"] = std::move(analytic_json);
            stage["empirical_mean"] = std::move(empirical);
            stage["empirical_std_error"] = std::move(std_errors);
            json[name] = std::move(stage);
        };
        summarize("stage1", stage1, analytic1, 1);
        summarize("stage2", stage2, analytic2, 2);
        emit(common, "equilibrate", config, std::move(json), csv.str());
    }
};

struct EnsembleCommand {
    CommonOptions common;
    DemonInputs inputs;
    std::string what = "delta-n";
    std::string mode = "active";
    std::string subset_a;
    int measured_a = -1;
    int measured_b = -1;
    int trials = 0;
    double bin_width = 0.05;

    void run() const {
        Json config = common_config(common);
        inputs.echo(config);
        config["what"] = what;
        if (inputs.unitaries <= 0) {
            throw DimensionError("--unitaries K is required");
        }
        const std::vector<double> factors = inputs.scale_factors();
        const DetectorModel detector =
            factors.empty() ? DetectorModel::ideal(inputs.modes) : DetectorModel(factors);
        if (what == "flux") {
            config["bin_width"] = bin_width;
            const ModeFluxHistogram histogram = mode_flux_histogram(
                static_cast<std::size_t>(inputs.unitaries), parse_statistics(inputs.statistics),
                detector, ensemble_seed(common), inputs.modes, inputs.photons, bin_width);
            std::ostringstream csv;
            csv << "unitary,mode,mean_photon_number\n";
            for (std::size_t k = 0; k < static_cast<std::size_t>(inputs.unitaries); ++k) {
                for (std::size_t j = 0; j < histogram.per_unitary.size(); ++j) {
                    csv << k << ',' << j << ',' << format_double(histogram.per_unitary[j][k])
                        << "\n";
                }
            }
            emit(common, "ensemble", config, flux_histogram_to_json(histogram), csv.str());
            return;
        }
        if (what != "delta-n") {
            throw DimensionError("--what must be 'delta-n' or 'flux'");
        }
        config["mode"] = mode;
        config["trials"] = trials;
        const ModeConfiguration mc =
            config_from_flags(inputs.modes, subset_a, measured_a, measured_b);
        config["subset_a"] = mc.subset_a;
        config["measured_a"] = mc.measured_a;
        config["measured_b"] = mc.measured_b;
        const EnsembleDeltaN result = ensemble_delta_n(
            static_cast<std::size_t>(inputs.unitaries), parse_statistics(inputs.statistics),
            parse_mode(mode), mc, detector, static_cast<std::size_t>(trials),
            ensemble_seed(common), inputs.modes, inputs.photons);
        Json json{{"stats",
                   Json{{"mean", result.stats.mean},
                        {"std_error", result.stats.std_error},
                        {"unitary_count", result.stats.unitary_count},
                        {"trials_per_unitary", result.stats.trials_per_unitary}}},
                  {"distribution", delta_n_to_json(result.distribution)},
                  {"per_unitary_means", result.per_unitary_means}};
        std::ostringstream csv;
        csv << "# mean=" << format_double(result.stats.mean)
            << "\n# std_error=" << format_double(result.stats.std_error) << "\n"
            << DemonRunCommand::delta_csv(result.distribution);
        emit(common, "ensemble", config, std::move(json), csv.str());
    }
};

struct TemperatureCommand {
    CommonOptions common;
    double density = -1.0;
    double wavelength_nm = 1550.0;
    std::string fit_file;
    int max_photons = 20;
    int max_modes = 20;

    void run() const {
        Json config = common_config(common);
        config["wavelength_nm"] = wavelength_nm;
        const double energy = photon_energy_from_wavelength(wavelength_nm * 1e-9);
        if (!fit_file.empty()) {
            config["fit"] = fit_file;
            config["max_photons"] = max_photons;
            config["max_modes"] = max_modes;
            const Json payload = unwrap_result(load_json_file(fit_file));
            const std::vector<double> observed = payload.at("probs").get<std::vector<double>>();
            const TemperatureFit fit = fit_temperature(observed, energy, max_photons, max_modes);
            Json json{{"photons", fit.photons},
                      {"modes", fit.modes},
                      {"tv_distance", fit.tv_distance},
                      {"report", temperature_to_json(fit.report)}};
            std::ostringstream csv;
            csv << "photons,modes,tv_distance,photon_density,temperature_K\n"
                << fit.photons << ',' << fit.modes << ',' << format_double(fit.tv_distance) << ','
                << format_double(fit.report.photon_density) << ','
                << format_double(fit.report.temperature) << "\n";
            emit(common, "temperature", config, std::move(json), csv.str());
            return;
        }
        if (density < 0.0) {
            throw DimensionError("provide --density R or --fit FILE");
        }
        config["density"] = density;
        const TemperatureReport report = effective_temperature(density, energy);
        std::ostringstream csv;
        csv << "photon_density,temperature_K,photon_energy_J\n"
            << format_double(report.photon_density) << ',' << format_double(report.temperature)
            << ',' << format_double(report.photon_energy) << "\n";
        emit(common, "temperature", config, temperature_to_json(report), csv.str());
    }
};

struct FigureCommand {
    CommonOptions common;
    std::string which;
    int unitaries = 0;
    std::string detector;

    void run() const {
        Json config = common_config(common);
        config["which"] = which;
        if (!detector.empty()) {
            config["detector"] = detector;
        }
        if (which == "fig2a" || which == "fig2b") {
            equilibration_figure(config, which == "fig2b");
        } else if (which == "fig3a" || which == "fig3b") {
            delta_figure(config, which == "fig3b" ? DemonMode::active : DemonMode::passive);
        } else if (which == "fig3c") {
            temperature_figure(config);
        } else if (which == "sm_flux") {
            flux_figure(config);
        } else if (which == "sm_sweep") {
            sweep_figure(config);
        } else {
            throw DimensionError("unknown figure selector: " + which);
        }
    }

    int count_or(int fallback) const { return unitaries > 0 ? unitaries : fallback; }

    std::vector<OutcomeDistribution> exact_dists(PhotonStatistics stat, int count) const {
        const InputConfiguration in = InputConfiguration::first_modes(3);
        std::vector<OutcomeDistribution> dists;
        dists.reserve(static_cast<std::size_t>(count));
        for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
            dists.push_back(full_distribution(
                sample_haar(4, ensemble_unitary_seed(ensemble_seed(common), k)), in, stat));
        }
        return dists;
    }

    void equilibration_figure(Json& config, bool composite) const {
        const int count = count_or(50);
        config["unitaries"] = count;
        const auto analytic_indist =
            composite ? uniform_law_marginal(4, 3) : uniform_law_marginal(3, 3);
        const auto analytic_dist =
            exact_marginal(composite ? haar_average_dist(4, 3) : haar_average_dist(3, 3), 0);
        Json json;
        std::ostringstream csv;
        csv << "statistics,n,analytic,empirical_mean,empirical_std_error\n";
        for (const PhotonStatistics stat :
             {PhotonStatistics::indistinguishable, PhotonStatistics::distinguishable}) {
            std::vector<std::vector<double>> samples;
            for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
                const UnitaryMatrix u3 = sample_haar(3, ensemble_seed(common).substream(k));
                const UnitaryMatrix u4 = sample_haar(4, secondary_seed(common).substream(k));
                const auto stages = equilibration_pipeline(u3, u4, stat);
                samples.push_back(composite ? stages.second : stages.first);
            }
            const auto& analytic =
                stat == PhotonStatistics::indistinguishable ? analytic_indist : analytic_dist;
            const std::string label = to_string(to_label(stat));
            Json series;
            Json analytic_json = Json::array();
            Json mean_json = Json::array();
            Json se_json = Json::array();
            for (std::size_t n = 0; n < samples.front().size(); ++n) {
                double sum = 0.0;
                double sum_sq = 0.0;
                for (const auto& sample : samples) {
                    sum += sample[n];
                    sum_sq += sample[n] * sample[n];
                }
                const double k = static_cast<double>(samples.size());
                const double mean = sum / k;
                const double std_error =
                    samples.size() > 1
                        ? std::sqrt(std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0)) / k)
                        : 0.0;
                const double analytic_value = boost::rational_cast<double>(analytic[n]);
                analytic_json.push_back(analytic_value);
                mean_json.push_back(mean);
                se_json.push_back(std_error);
                csv << label << ',' << n << ',' << format_double(analytic_value) << ','
                    << format_double(mean) << ',' << format_double(std_error) << "\n";
            }
            series["analytic"] = std::move(analytic_json);
            series["empirical_mean"] = std::move(mean_json);
            series["empirical_std_error"] = std::move(se_json);
            json[label] = std::move(series);
        }
        emit(common, "figure", config, std::move(json), csv.str());
    }

    void delta_figure(Json& config, DemonMode mode) const {
        const int count = count_or(100);
        config["unitaries"] = count;
        const ModeConfiguration mc = canonical_configuration(4);
        Json json;
        std::ostringstream csv;
        csv << "series,delta,p,std_error\n";
        for (const PhotonStatistics stat :
             {PhotonStatistics::indistinguishable, PhotonStatistics::distinguishable}) {
            const std::string label = to_string(to_label(stat));
            const HaarAveragedDistribution average = stat == PhotonStatistics::indistinguishable
                                                         ? haar_average_indist(4, 3)
                                                         : haar_average_dist(4, 3);
            const DeltaNDistribution analytic = mode == DemonMode::active
                                                    ? delta_n_active(average, mc)
                                                    : delta_n_passive(average, mc);
            // Per-bucket means and standard errors across the ensemble.
            const auto dists = exact_dists(stat, count);
            std::map<int, std::pair<double, double>> buckets;
            double mean_sum = 0.0;
            double mean_sq = 0.0;
            for (const OutcomeDistribution& dist : dists) {
                const DeltaNDistribution delta = mode == DemonMode::active
                                                     ? delta_n_active(dist, mc)
                                                     : delta_n_passive(dist, mc);
                for (int value = -dist.photons; value <= dist.photons; ++value) {
                    const auto it = delta.probs.find(value);
                    const double p = it == delta.probs.end() ? 0.0 : it->second;
                    buckets[value].first += p;
                    buckets[value].second += p * p;
                }
                mean_sum += delta.mean;
                mean_sq += delta.mean * delta.mean;
            }
            const double k = static_cast<double>(dists.size());
            const double ensemble_mean = mean_sum / k;
            const double mean_se =
                k > 1 ? std::sqrt(std::max(0.0, (mean_sq - k * ensemble_mean * ensemble_mean) /
                                                    (k - 1.0)) /
                                  k)
                      : 0.0;
            Json ensemble_entries = Json::array();
            for (const auto& [value, acc] : buckets) {
                const double p = acc.first / k;
                const double se =
                    k > 1 ? std::sqrt(std::max(0.0, (acc.second - k * p * p) / (k - 1.0)) / k)
                          : 0.0;
                ensemble_entries.push_back(
                    Json{{"delta", value}, {"p", p}, {"std_error", se}});
                csv << "ensemble_" << label << ',' << value << ',' << format_double(p) << ','
                    << format_double(se) << "\n";
            }
            for (const auto& [value, p] : analytic.probs) {
                csv << "analytic_" << label << ',' << value << ',' << format_double(p) << ",0\n";
            }
            json[label] = Json{{"analytic", delta_n_to_json(analytic)},
                               {"ensemble", Json{{"entries", std::move(ensemble_entries)},
                                                 {"mean", ensemble_mean},
                                                 {"std_error", mean_se}}}};
        }
        emit(common, "figure", config, std::move(json), csv.str());
    }

    void temperature_figure(Json& config) const {
        const int count = count_or(100);
        config["unitaries"] = count;
        const double energy = photon_energy_from_wavelength(kDefaultWavelengthM);
        const ModeConfiguration mc = canonical_configuration(4);
        Json json;
        std::ostringstream csv;
        csv << "statistics,mode,side,analytic_T,ensemble_mean,ensemble_std_error\n";
        for (const PhotonStatistics stat :
             {PhotonStatistics::indistinguishable, PhotonStatistics::distinguishable}) {
            const std::string label = to_string(to_label(stat));
            const HaarAveragedDistribution average = stat == PhotonStatistics::indistinguishable
                                                         ? haar_average_indist(4, 3)
                                                         : haar_average_dist(4, 3);
            const auto dists = exact_dists(stat, count);
            for (const DemonMode mode : {DemonMode::passive, DemonMode::active}) {
                const auto analytic =
                    subset_temperatures(average.to_distribution(), mc, energy, mode);
                double sum_a = 0.0;
                double sum_b = 0.0;
                double sq_a = 0.0;
                double sq_b = 0.0;
                for (const OutcomeDistribution& dist : dists) {
                    const auto pair = subset_temperatures(dist, mc, energy, mode);
                    sum_a += pair.first.temperature;
                    sq_a += pair.first.temperature * pair.first.temperature;
                    sum_b += pair.second.temperature;
                    sq_b += pair.second.temperature * pair.second.temperature;
                }
                const double k = static_cast<double>(dists.size());
                const double mean_a = sum_a / k;
                const double mean_b = sum_b / k;
                const double se_a =
                    k > 1 ? std::sqrt(std::max(0.0, (sq_a - k * mean_a * mean_a) / (k - 1.0)) / k)
                          : 0.0;
                const double se_b =
                    k > 1 ? std::sqrt(std::max(0.0, (sq_b - k * mean_b * mean_b) / (k - 1.0)) / k)
                          : 0.0;
                const std::string mode_label = mode == DemonMode::active ? "active" : "passive";
                json[label][mode_label] =
                    Json{{"analytic_A", analytic.first.temperature},
                         {"analytic_B", analytic.second.temperature},
                         {"ensemble_A", Json{{"mean", mean_a}, {"std_error", se_a}}},
                         {"ensemble_B", Json{{"mean", mean_b}, {"std_error", se_b}}}};
                csv << label << ',' << mode_label << ",A,"
                    << format_double(analytic.first.temperature) << ',' << format_double(mean_a)
                    << ',' << format_double(se_a) << "\n";
                csv << label << ',' << mode_label << ",B,"
                    << format_double(analytic.second.temperature) << ',' << format_double(mean_b)
                    << ',' << format_double(se_b) << "\n";
            }
        }
        emit(common, "figure", config, std::move(json), csv.str());
    }

    void flux_figure(Json& config) const {
        const int count = count_or(1000);
        config["unitaries"] = count;
        const DetectorModel model = detector.empty() ? DetectorModel::ideal(4)
                                                     : DetectorModel(parse_double_list(detector));
        const ModeFluxHistogram histogram =
            mode_flux_histogram(static_cast<std::size_t>(count),
                                PhotonStatistics::indistinguishable, model, ensemble_seed(common));
        std::ostringstream csv;
        csv << "unitary,mode,mean_photon_number\n";
        for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
            for (std::size_t j = 0; j < histogram.per_unitary.size(); ++j) {
                csv << k << ',' << j << ',' << format_double(histogram.per_unitary[j][k]) << "\n";
            }
        }
        emit(common, "figure", config, flux_histogram_to_json(histogram), csv.str());
    }

    void sweep_figure(Json& config) const {
        const int count = count_or(100);
        config["unitaries"] = count;
        Json json;
        std::ostringstream csv;
        csv << "statistics,subset_a,measured_a,measured_b,mean\n";
        for (const PhotonStatistics stat :
             {PhotonStatistics::indistinguishable, PhotonStatistics::distinguishable}) {
            const std::string label = to_string(to_label(stat));
            const auto dists = exact_dists(stat, count);
            Json entries = Json::array();
            for (const SweepEntry& entry : configuration_sweep(dists, DemonMode::active)) {
                entries.push_back(Json{{"subset_a", entry.config.subset_a},
                                       {"measured_a", entry.config.measured_a},
                                       {"measured_b", entry.config.measured_b},
                                       {"mean", entry.mean}});
                csv << label << ',' << join_ints(entry.config.subset_a, '+') << ','
                    << entry.config.measured_a << ',' << entry.config.measured_b << ','
                    << format_double(entry.mean) << "\n";
            }
            json[label] = std::move(entries);
        }
        emit(common, "figure", config, std::move(json), csv.str());
    }
};

} // namespace

int run_main(int argc, const char* const* argv) {
    CLI::App app{"Multiphoton interference and photonic Maxwell-demon simulator"};
    app.require_subcommand(1);
    // CLI11 only reads config files on the root app; sections ([outcome-probs],
    // [demon.run], or dotted keys) address subcommand options, and explicit
    // flags always win over file values.
    app.set_config("--config", "", "Read option defaults from a config file");

    HaarGenCommand haar_gen;
    auto* haar_gen_cmd = app.add_subcommand("haar-gen", "Sample Haar-random unitaries");
    haar_gen_cmd->add_option("--dim", haar_gen.dim, "Unitary dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    haar_gen_cmd->add_option("--count", haar_gen.count, "Number of draws")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_common(haar_gen_cmd, haar_gen.common);
    haar_gen_cmd->callback([&] { haar_gen.run(); });

    WeingartenCommand weingarten;
    auto* weingarten_cmd =
        app.add_subcommand("weingarten", "Tabulate Weingarten values for U(R), degree d");
    weingarten_cmd->add_option("--R", weingarten.unitary_dim, "Unitary group dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    weingarten_cmd->add_option("--d", weingarten.degree, "Moment degree")
        ->required()
        ->check(CLI::PositiveNumber);
    add_common(weingarten_cmd, weingarten.common);
    weingarten_cmd->callback([&] { weingarten.run(); });

    OutcomeProbsCommand outcome_probs;
    auto* outcome_cmd =
        app.add_subcommand("outcome-probs", "Exact outcome distribution of one interferometer");
    outcome_cmd->add_option("--unitary", outcome_probs.unitary_file, "Unitary JSON file");
    outcome_cmd->add_option("--haar-dim", outcome_probs.haar_dim,
                            "Draw a Haar unitary of this dimension instead");
    outcome_cmd->add_option("--input", outcome_probs.input, "Occupied input modes")
        ->capture_default_str();
    outcome_cmd->add_option("--statistics", outcome_probs.statistics, "indist or dist")
        ->capture_default_str();
    outcome_cmd->add_option("--gram", outcome_probs.gram_file,
                            "Gram-matrix JSON file for partial distinguishability");
    add_common(outcome_cmd, outcome_probs.common);
    outcome_cmd->callback([&] { outcome_probs.run(); });

    HaarAverageCommand haar_average;
    auto* average_cmd =
        app.add_subcommand("haar-average", "Analytic Haar-averaged outcome distribution");
    average_cmd->add_option("--M", haar_average.modes, "Mode count")
        ->required()
        ->check(CLI::PositiveNumber);
    average_cmd->add_option("--N", haar_average.photons, "Photon count")
        ->required()
        ->check(CLI::NonNegativeNumber);
    average_cmd->add_option("--statistics", haar_average.statistics, "indist or dist")
        ->capture_default_str();
    add_common(average_cmd, haar_average.common);
    average_cmd->callback([&] { haar_average.run(); });

    auto* demon_cmd = app.add_subcommand("demon", "Maxwell-demon protocols");
    demon_cmd->require_subcommand(1);

    DemonRunCommand demon_run;
    auto* run_cmd = demon_cmd->add_subcommand("run", "Count-difference distribution");
    demon_run.inputs.add_flags(run_cmd);
    run_cmd->add_option("--mode", demon_run.mode, "passive or active")->capture_default_str();
    run_cmd->add_option("--subset-a", demon_run.subset_a, "Modes of subset A");
    run_cmd->add_option("--measured-a", demon_run.measured_a, "Analyzed mode in A");
    run_cmd->add_option("--measured-b", demon_run.measured_b, "Analyzed mode in B");
    run_cmd->add_option("--trials", demon_run.trials, "Sampled trials per unitary (0 = exact)");
    add_common(run_cmd, demon_run.common);
    run_cmd->callback([&] { demon_run.run(); });

    DemonSweepCommand demon_sweep;
    auto* sweep_cmd = demon_cmd->add_subcommand("sweep", "All subset/analyzed-mode choices");
    demon_sweep.inputs.add_flags(sweep_cmd);
    sweep_cmd->add_option("--mode", demon_sweep.mode, "passive or active")->capture_default_str();
    add_common(sweep_cmd, demon_sweep.common);
    sweep_cmd->callback([&] { demon_sweep.run(); });

    DemonRandomizeCommand demon_randomize;
    auto* randomize_cmd =
        demon_cmd->add_subcommand("randomize", "Randomized-partition estimate");
    demon_randomize.inputs.add_flags(randomize_cmd);
    randomize_cmd->add_option("--mode", demon_randomize.mode, "passive or active")
        ->capture_default_str();
    randomize_cmd->add_option("--rounds", demon_randomize.rounds, "Randomization rounds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_common(randomize_cmd, demon_randomize.common);
    randomize_cmd->callback([&] { demon_randomize.run(); });

    EquilibrateCommand equilibrate;
    auto* equilibrate_cmd =
        app.add_subcommand("equilibrate", "Two-stage equilibration marginals");
    equilibrate_cmd->add_option("--statistics", equilibrate.statistics, "indist or dist")
        ->capture_default_str();
    equilibrate_cmd->add_option("--unitaries", equilibrate.unitaries, "Ensemble size")
        ->capture_default_str();
    equilibrate_cmd->add_flag("--identity", equilibrate.identity,
                              "Use identity interferometers instead of Haar draws");
    add_common(equilibrate_cmd, equilibrate.common);
    equilibrate_cmd->callback([&] { equilibrate.run(); });

    EnsembleCommand ensemble;
    auto* ensemble_cmd = app.add_subcommand("ensemble", "Monte Carlo Haar-ensemble runs");
    ensemble.inputs.add_flags(ensemble_cmd);
    ensemble_cmd->add_option("--what", ensemble.what, "delta-n or flux")->capture_default_str();
    ensemble_cmd->add_option("--mode", ensemble.mode, "passive or active")->capture_default_str();
    ensemble_cmd->add_option("--subset-a", ensemble.subset_a, "Modes of subset A");
    ensemble_cmd->add_option("--measured-a", ensemble.measured_a, "Analyzed mode in A");
    ensemble_cmd->add_option("--measured-b", ensemble.measured_b, "Analyzed mode in B");
    ensemble_cmd->add_option("--trials", ensemble.trials, "Sampled trials per unitary (0 = exact)");
    ensemble_cmd->add_option("--bin-width", ensemble.bin_width, "Flux histogram bin width")
        ->capture_default_str();
    add_common(ensemble_cmd, ensemble.common);
    ensemble_cmd->callback([&] { ensemble.run(); });

    TemperatureCommand temperature;
    auto* temperature_cmd =
        app.add_subcommand("temperature", "Effective temperature from density or fit");
    temperature_cmd->add_option("--density", temperature.density, "Photon density N/M");
    temperature_cmd->add_option("--wavelength-nm", temperature.wavelength_nm, "Photon wavelength")
        ->capture_default_str();
    temperature_cmd->add_option("--fit", temperature.fit_file,
                                "JSON file with a single-mode distribution {\"probs\": [...]}");
    temperature_cmd->add_option("--max-photons", temperature.max_photons, "Fit grid bound on N")
        ->capture_default_str();
    temperature_cmd->add_option("--max-modes", temperature.max_modes, "Fit grid bound on M")
        ->capture_default_str();
    add_common(temperature_cmd, temperature.common);
    temperature_cmd->callback([&] { temperature.run(); });

    FigureCommand figure;
    auto* figure_cmd = app.add_subcommand("figure", "Columnar data for the bundled figure set");
    figure_cmd
        ->add_option("--which", figure.which,
                     "One of fig2a, fig2b, fig3a, fig3b, fig3c, sm_flux, sm_sweep")
        ->required();
    figure_cmd->add_option("--unitaries", figure.unitaries, "Override the figure's ensemble size");
    figure_cmd->add_option("--detector", figure.detector, "Detector scale factors (sm_flux)");
    add_common(figure_cmd, figure.common);
    figure_cmd->callback([&] { figure.run(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return 2;
    } catch (const DimensionError& error) {
        std::cerr << "usage error: " << error.what() << "\n";
        return 2;
    } catch (const SizeError& error) {
        std::cerr << "usage error: " << error.what() << "\n";
        return 2;
    } catch (const NumericalError& error) {
        std::cerr << "numerical error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace demonsim::cli
