#pragma once

#include <string>

#include <json.hpp>

#include "demonsim/demon.hpp"
#include "demonsim/ensemble.hpp"

namespace demonsim {

using Json = nlohmann::ordered_json;

std::string format_double(double value); // shortest round-trip decimal

std::string to_string(StatisticsLabel label);

Json unitary_to_json(const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const Json& j);

Json gram_to_json(const DistinguishabilityModel& model);
DistinguishabilityModel gram_from_json(const Json& j);

Json distribution_to_json(const OutcomeDistribution& dist);
Json distribution_to_json(const HaarAveragedDistribution& average);
OutcomeDistribution distribution_from_json(const Json& j);

std::string distribution_to_csv(const OutcomeDistribution& dist);
OutcomeDistribution distribution_from_csv(const std::string& text);

Json delta_n_to_json(const DeltaNDistribution& dist);
DeltaNDistribution delta_n_from_json(const Json& j);

Json temperature_to_json(const TemperatureReport& report);
TemperatureReport temperature_from_json(const Json& j);

Json flux_histogram_to_json(const ModeFluxHistogram& histogram);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Json load_json_file(const std::string& path);

// CLI outputs wrap payloads as {"command":…, "config":…, "result":…}; readers
// accept either the bare payload or such an envelope.
const Json& unwrap_result(const Json& j);

} // namespace demonsim
