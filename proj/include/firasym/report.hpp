#pragma once

#include <string>

#include <json.hpp>

#include "firasym/checks.hpp"
#include "firasym/ensemble.hpp"
#include "firasym/estimators.hpp"

namespace firasym {

// JSON config document -> typed specs. Schema violations throw ConfigError.
FilterSpec parse_filter(const nlohmann::json& j);
InnovationSpec parse_innovation(const nlohmann::json& j);
KernelSpec parse_kernel(const nlohmann::json& j, int n);
McConfig parse_mc_config(const nlohmann::json& j);

nlohmann::json report_to_json(const McReport& r);
McReport report_from_json(const nlohmann::json& j);  // ignores unknown fields

// Fixed-format human-readable table, one line per verdict.
std::string render_report(const McReport& r);

std::string read_text_file(const std::string& path);     // IoError on failure
void write_text_file(const std::string& path, const std::string& text);

}  // namespace firasym
