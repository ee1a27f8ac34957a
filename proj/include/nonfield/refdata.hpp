#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace nf {

enum class Source { paper_calc, paper_obs, external };
const char* source_name(Source s);
Source parse_source(const std::string& s);

struct ReferenceRow {
  std::string system;
  std::string label;
  std::optional<int> n, l, two_j;
  std::string series;
  std::string value_text;  // decimal text as stored; empty when the table has no number
  std::string unit;
  Source source = Source::paper_calc;
  std::set<std::string> flags;  // mixed, absent, inconsistent

  bool has_value() const { return !value_text.empty(); }
  double value() const;
  bool flagged() const { return !flags.empty(); }
  // identifies the same physical row across sources
  std::string key() const;
  // half a unit in the last printed decimal place
  double half_last_place() const;
};

struct ReferenceTable {
  std::string name;
  std::vector<ReferenceRow> rows;

  ReferenceTable only(Source s) const;
  ReferenceTable where(const std::function<bool(const ReferenceRow&)>& keep) const;
  const ReferenceRow* find(const std::string& system, const std::string& label, Source s,
                           const std::string& series = {}) const;
  double value(const std::string& system, const std::string& label, Source s, const std::string& series = {}) const;
  std::string energy_unit() const;  // the one energy unit in use, empty if none
};

const std::vector<std::string>& builtin_names();
// Served from the embedded copies unless NONFIELD_DATA_DIR points at a directory
// holding <name>.csv.
ReferenceTable builtin_reference(const std::string& name);

ReferenceTable parse_reference_csv(const std::string& text, const std::string& name);
ReferenceTable parse_reference_json(const std::string& text, const std::string& name);
std::string to_csv(const ReferenceTable& t);
nlohmann::json to_json(const ReferenceTable& t);
// format "csv", "json" or "" to pick by extension
ReferenceTable load_reference(const std::string& path, const std::string& format = {});
void validate_table(const ReferenceTable& t);

double constant(const std::string& key);  // numeric entry of the constants table

struct RowDeviation {
  std::string key;
  std::string label;
  double calc = 0;
  double ref = 0;
  double deviation = 0;  // calc - ref
  double tol = 0;
  bool passed = false;
};

struct MatchReport {
  double max_dev = 0;
  std::string argmax;
  int rows_passed = 0;
  int rows_failed = 0;
  int rows_flagged = 0;
  std::vector<std::string> missing;  // keys present in ref but absent in calc
  std::vector<RowDeviation> rows;
  std::vector<std::string> flagged;
  bool pass() const { return rows_failed == 0; }
};

MatchReport compare_tables(const ReferenceTable& calc, const ReferenceTable& ref, double tol);
MatchReport compare_tables(const ReferenceTable& calc, const ReferenceTable& ref,
                           const std::function<double(const ReferenceRow&)>& tol_for);
nlohmann::json to_json(const MatchReport& r);

// every flagged row of every builtin table
nlohmann::json flag_manifest();

}  // namespace nf
