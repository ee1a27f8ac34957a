#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nonfield/refdata.hpp"

namespace nf {

// How one printed row is recomputed by the engine.
struct RowRecipe {
  std::string key;
  std::string method;  // short human description, e.g. "so pair 4(0,0>0,2)"
  double tol = 0;
};

struct Reproduction {
  std::string table;
  std::string unit;
  ReferenceTable engine;  // engine values keyed like the printed rows
  std::vector<RowRecipe> recipes;
  std::vector<std::string> errors;  // "key: message" for recipes that threw
  MatchReport report;               // engine against the printed calculated rows

  // missing rows have no recipe; they are listed but do not fail the table
  bool pass() const { return errors.empty() && report.pass(); }
};

Reproduction reproduce_table(const std::string& name);
Reproduction reproduce_table(const std::string& name, const ReferenceTable& printed);
nlohmann::json to_json(const Reproduction& r);

}  // namespace nf
