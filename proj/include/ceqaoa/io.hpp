#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceqaoa/fejer.hpp"
#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"
#include "ceqaoa/planner.hpp"
#include "ceqaoa/rl_averaging.hpp"

namespace ceqaoa::io {

/// Shortest round-trip decimal form of a double ("inf"/"nan" for non-finite).
std::string format_double(double x);

/// Inverse of StringSpace::label.
std::size_t parse_label(const StringSpace& space, const std::string& label);

nlohmann::json envelope_to_json(const Envelope& env);
/// CSV with header "string,probability".
std::string envelope_to_csv(const StringSpace& space, const Envelope& env);
/// Accepts a JSON array, {"probs": [...]}, or the CSV form above.
Envelope parse_envelope(const std::string& text, const StringSpace& space);
Envelope load_envelope_file(const std::string& path, const StringSpace& space);

/// CSV with header "string,phase,fejer_weight,probability".
std::string filtered_law_to_csv(const StringSpace& space, const FilteredLaw& law,
                                const PhaseModel& pm);

/// CSV with header "string,probability,std_error".
std::string rl_law_to_csv(const StringSpace& space, const RlLaw& law);

nlohmann::json certificate_to_json(const Certificate& cert);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

/// Comma-separated list of reals, e.g. "0.1,0.2"; empty text gives {}.
std::vector<double> parse_real_list(const std::string& text);

std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ceqaoa::io
