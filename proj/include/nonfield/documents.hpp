#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nonfield/nuclei.hpp"

// JSON documents shared by the C API, the command line and the HTTP service.
// Every document carries "schema_version", "op" and the constants it used;
// most also carry a "table" block ({columns: [{name, digits}], rows}) that the
// front ends render as text or CSV.
namespace nf::doc {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

const std::vector<std::string>& operations();
json dispatch(const std::string& op, const json& args);

ShellConfiguration configuration_from_json(const json& j);
json to_json(const ShellConfiguration& c);
ExcitationRules rules_from_json(const json& j);
json to_json(const ExcitationRules& r);
json calibration_json(const Calibration& c);

// format: "json", "csv" or "human"
std::string render(const json& document, const std::string& format);

}  // namespace nf::doc
