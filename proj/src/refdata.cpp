#include "nonfield/refdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "nonfield/errors.hpp"

namespace nf {

namespace detail {
// generated at build time from data/*.csv
const std::vector<std::pair<std::string, std::string_view>>& embedded_tables();
}  // namespace detail

namespace {

const std::vector<std::string> kColumns = {"system", "label", "n",     "l",      "two_j",
                                           "series", "value", "unit", "source", "flags"};

bool is_energy_unit(const std::string& u) { return u == "eV" || u == "keV" || u == "MeV"; }

double parse_decimal(const std::string& text) {
  double v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || !std::isfinite(v)) throw ParseError("not a decimal number: '" + text + "'");
  return v;
}

std::optional<int> parse_opt_int(const std::string& text, const std::string& what) {
  if (text.empty()) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError(what + " must be an integer, got '" + text + "'");
  return v;
}

std::set<std::string> parse_flags(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    if (item != "mixed" && item != "absent" && item != "inconsistent")
      throw ParseError("unknown flag '" + item + "' (expected mixed, absent or inconsistent)");
    out.insert(item);
  }
  return out;
}

struct CsvCell {
  std::string text;
  int column = 0;
};

// RFC 4180 records; reports 1-based line/column of malformed input
std::vector<std::vector<CsvCell>> split_csv(const std::string& text, std::vector<int>& lines) {
  std::vector<std::vector<CsvCell>> records;
  std::vector<CsvCell> rec;
  CsvCell cell;
  int line = 1, col = 1, rec_line = 1;
  bool quoted = false, any = false;
  cell.column = 1;
  auto end_cell = [&] {
    rec.push_back(cell);
    cell = CsvCell{};
    cell.column = col + 1;
  };
  auto end_record = [&] {
    if (any || !rec.empty() || !cell.text.empty()) {
      rec.push_back(cell);
      records.push_back(rec);
      lines.push_back(rec_line);
    }
    rec.clear();
    cell = CsvCell{};
    cell.column = 1;
    any = false;
  };
  for (size_t i = 0; i < text.size(); ++i, ++col) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.text += '"';
          ++i;
          ++col;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') {
          ++line;
          col = 0;
        }
        cell.text += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!cell.text.empty())
          throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": stray quote");
        quoted = true;
        any = true;
        break;
      case ',':
        any = true;
        end_cell();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        col = 0;
        rec_line = line;
        break;
      default:
        any = true;
        cell.text += c;
    }
  }
  if (quoted) throw ParseError("line " + std::to_string(line) + ": unterminated quoted field");
  end_record();
  return records;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* source_name(Source s) {
  switch (s) {
    case Source::paper_calc: return "paper_calc";
    case Source::paper_obs: return "paper_obs";
    case Source::external: return "external";
  }
  return "external";
}

Source parse_source(const std::string& s) {
  if (s == "paper_calc") return Source::paper_calc;
  if (s == "paper_obs") return Source::paper_obs;
  if (s == "external") return Source::external;
  throw ParseError("source must be paper_calc, paper_obs or external, got '" + s + "'");
}

double ReferenceRow::value() const {
  if (value_text.empty()) throw InvalidArgument("row '" + label + "' carries no value");
  return parse_decimal(value_text);
}

std::string ReferenceRow::key() const { return system + "|" + series + "|" + label; }

double ReferenceRow::half_last_place() const {
  const auto dot = value_text.find('.');
  if (dot == std::string::npos) return 0.5;
  size_t digits = 0;
  for (size_t i = dot + 1; i < value_text.size() && std::isdigit(static_cast<unsigned char>(value_text[i])); ++i)
    ++digits;
  return 0.5 * std::pow(10.0, -static_cast<double>(digits));
}

ReferenceTable ReferenceTable::only(Source s) const {
  return where([s](const ReferenceRow& r) { return r.source == s; });
}

ReferenceTable ReferenceTable::where(const std::function<bool(const ReferenceRow&)>& keep) const {
  ReferenceTable t;
  t.name = name;
  for (const auto& r : rows)
    if (keep(r)) t.rows.push_back(r);
  return t;
}

const ReferenceRow* ReferenceTable::find(const std::string& system, const std::string& label, Source s,
                                         const std::string& series) const {
  for (const auto& r : rows)
    if (r.system == system && r.label == label && r.source == s && (series.empty() || r.series == series)) return &r;
  return nullptr;
}

double ReferenceTable::value(const std::string& system, const std::string& label, Source s,
                             const std::string& series) const {
  const ReferenceRow* r = find(system, label, s, series);
  if (!r) throw NotFound("no row " + system + " '" + label + "' (" + source_name(s) + ") in table " + name);
  return r->value();
}

std::string ReferenceTable::energy_unit() const {
  for (const auto& r : rows)
    if (is_energy_unit(r.unit)) return r.unit;
  return {};
}

void validate_table(const ReferenceTable& t) {
  std::string energy;
  std::map<std::string, int> last_n;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::string where = "table " + t.name + ", row " + std::to_string(i + 1);
    if (r.system.empty() || r.label.empty()) throw ParseError(where + ": system and label are required");
    if (r.unit.empty()) throw ParseError(where + ": unit is required");
    if (!is_energy_unit(r.unit) && r.unit != "1" && r.unit != "A")
      throw ParseError(where + ": unknown unit '" + r.unit + "'");
    if (r.has_value()) (void)parse_decimal(r.value_text);
    if (!r.has_value() && !r.flagged()) throw ParseError(where + ": empty value without a flag");
    if (t.name == "constants" || !is_energy_unit(r.unit)) continue;
    if (energy.empty()) energy = r.unit;
    if (r.unit != energy) throw ParseError(where + ": unit mismatch, " + r.unit + " in a table using " + energy);
    if (energy == "eV" && r.n) {
      const std::string k = r.system + "|" + r.series + "|" + source_name(r.source);
      auto it = last_n.find(k);
      if (it != last_n.end() && *r.n < it->second)
        throw ParseError(where + ": state '" + r.label + "' breaks the ascending n order of series " + r.series);
      last_n[k] = *r.n;
    }
  }
}

ReferenceTable parse_reference_csv(const std::string& text, const std::string& name) {
  std::vector<int> lines;
  const auto records = split_csv(text, lines);
  if (records.empty()) throw ParseError("line 1: empty reference file");
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < records[0].size(); ++i) index[records[0][i].text] = i;
  for (const auto& c : kColumns)
    if (!index.count(c)) throw ParseError("line 1: missing column '" + c + "'");
  ReferenceTable t;
  t.name = name;
  for (size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const int line = lines[r];
    if (rec.size() != records[0].size())
      throw ParseError("line " + std::to_string(line) + ", column " +
                       std::to_string(rec.empty() ? 1 : rec.back().column) + ": expected " +
                       std::to_string(records[0].size()) + " fields, found " + std::to_string(rec.size()));
    auto cell = [&](const std::string& c) -> const CsvCell& { return rec[index[c]]; };
    try {
      ReferenceRow row;
      row.system = cell("system").text;
      row.label = cell("label").text;
      row.n = parse_opt_int(cell("n").text, "n");
      row.l = parse_opt_int(cell("l").text, "l");
      row.two_j = parse_opt_int(cell("two_j").text, "two_j");
      row.series = cell("series").text;
      row.value_text = cell("value").text;
      if (row.has_value()) (void)parse_decimal(row.value_text);
      row.unit = cell("unit").text;
      row.source = parse_source(cell("source").text);
      row.flags = parse_flags(cell("flags").text);
      t.rows.push_back(std::move(row));
    } catch (const ParseError& e) {
      // locate the offending column for the message
      int column = 1;
      for (const auto& c : kColumns) {
        const auto& cl = cell(c);
        try {
          if (c == "n" || c == "l" || c == "two_j") parse_opt_int(cl.text, c);
          if (c == "value" && !cl.text.empty()) parse_decimal(cl.text);
          if (c == "source") parse_source(cl.text);
          if (c == "flags") parse_flags(cl.text);
        } catch (const ParseError&) {
          column = cl.column;
          break;
        }
      }
      throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
  }
  validate_table(t);
  return t;
}

nlohmann::json to_json(const ReferenceTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json j;
    j["system"] = r.system;
    j["label"] = r.label;
    j["n"] = r.n ? nlohmann::json(*r.n) : nlohmann::json(nullptr);
    j["l"] = r.l ? nlohmann::json(*r.l) : nlohmann::json(nullptr);
    j["two_j"] = r.two_j ? nlohmann::json(*r.two_j) : nlohmann::json(nullptr);
    j["series"] = r.series;
    j["value"] = r.value_text;
    j["unit"] = r.unit;
    j["source"] = source_name(r.source);
    j["flags"] = std::vector<std::string>(r.flags.begin(), r.flags.end());
    rows.push_back(std::move(j));
  }
  return {{"name", t.name}, {"columns", kColumns}, {"rows", rows}};
}

ReferenceTable parse_reference_json(const std::string& text, const std::string& name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw ParseError("JSON reference must be an object with a 'rows' array");
  ReferenceTable t;
  t.name = doc.value("name", name);
  if (!name.empty()) t.name = name;
  size_t i = 0;
  for (const auto& j : doc["rows"]) {
    ++i;
    const std::string where = "row " + std::to_string(i) + ": ";
    try {
      ReferenceRow r;
      r.system = j.at("system").get<std::string>();
      r.label = j.at("label").get<std::string>();
      auto opt = [&](const char* k) -> std::optional<int> {
        if (!j.contains(k) || j[k].is_null()) return std::nullopt;
        return j[k].get<int>();
      };
      r.n = opt("n");
      r.l = opt("l");
      r.two_j = opt("two_j");
      r.series = j.value("series", "");
      if (!j.contains("value")) throw ParseError("missing value");
      const auto& v = j["value"];
      if (v.is_string())
        r.value_text = v.get<std::string>();
      else if (v.is_number())
        r.value_text = v.dump();
      else if (!v.is_null())
        throw ParseError("value must be decimal text");
      r.unit = j.at("unit").get<std::string>();
      r.source = parse_source(j.at("source").get<std::string>());
      if (j.contains("flags")) {
        std::string joined;
        for (const auto& f : j["flags"]) joined += f.get<std::string>() + ";";
        r.flags = parse_flags(joined);
      }
      if (r.has_value()) (void)parse_decimal(r.value_text);
      t.rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
  }
  validate_table(t);
  return t;
}

std::string to_csv(const ReferenceTable& t) {
  std::ostringstream os;
  for (size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    os << csv_quote(r.system) << ',' << csv_quote(r.label) << ',' << opt(r.n) << ',' << opt(r.l) << ','
       << opt(r.two_j) << ',' << csv_quote(r.series) << ',' << r.value_text << ',' << r.unit << ','
       << source_name(r.source) << ',' << flags << "\n";
  }
  return os.str();
}

ReferenceTable load_reference(const std::string& path, const std::string& format) {
  std::string fmt = format;
  const std::filesystem::path p(path);
  if (fmt.empty()) fmt = p.extension() == ".json" ? "json" : "csv";
  const std::string text = read_file(path);
  const std::string name = p.stem().string();
  if (fmt == "csv") return parse_reference_csv(text, name);
  if (fmt == "json") return parse_reference_json(text, name);
  throw InvalidArgument("format must be csv or json, got '" + format + "'");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"heII",
                                                 "hydrogen",
                                                 "liI",
                                                 "nuclei_mirror_levels",
                                                 "nuclei_mirror_excitations",
                                                 "nuclei_notmirror",
                                                 "constants"};
  return names;
}

ReferenceTable builtin_reference(const std::string& name) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw NotFound("unknown reference table '" + name + "'");
  if (const char* dir = std::getenv("NONFIELD_DATA_DIR"); dir && *dir) {
    const auto path = std::filesystem::path(dir) / (name + ".csv");
    if (std::filesystem::exists(path)) return parse_reference_csv(read_file(path.string()), name);
  }
  for (const auto& [n, text] : detail::embedded_tables())
    if (n == name) return parse_reference_csv(std::string(text), name);
  throw NotFound("reference table '" + name + "' is not embedded in this build");
}

double constant(const std::string& key) {
  static const ReferenceTable t = builtin_reference("constants");
  for (const auto& r : t.rows)
    if (r.label == key) return r.value();
  throw NotFound("unknown constant '" + key + "'");
}

MatchReport compare_tables(const ReferenceTable& calc, const ReferenceTable& ref, double tol) {
  return compare_tables(calc, ref, [tol](const ReferenceRow&) { return tol; });
}

MatchReport compare_tables(const ReferenceTable& calc, const ReferenceTable& ref,
                           const std::function<double(const ReferenceRow&)>& tol_for) {
  std::map<std::string, const ReferenceRow*> by_key;
  for (const auto& r : calc.rows) by_key.emplace(r.key(), &r);
  MatchReport rep;
  for (const auto& r : ref.rows) {
    auto it = by_key.find(r.key());
    if (r.flagged() || (it != by_key.end() && it->second->flagged())) {
      ++rep.rows_flagged;
      rep.flagged.push_back(r.key());
      continue;
    }
    if (it == by_key.end() || !it->second->has_value()) {
      rep.missing.push_back(r.key());
      continue;
    }
    RowDeviation d;
    d.key = r.key();
    d.label = r.label;
    d.ref = r.value();
    d.calc = it->second->value();
    d.deviation = d.calc - d.ref;
    d.tol = tol_for(r);
    d.passed = std::fabs(d.deviation) <= d.tol;
    if (d.passed)
      ++rep.rows_passed;
    else
      ++rep.rows_failed;
    if (std::fabs(d.deviation) > rep.max_dev || rep.argmax.empty()) {
      rep.max_dev = std::fabs(d.deviation);
      rep.argmax = d.key;
    }
    rep.rows.push_back(d);
  }
  return rep;
}

nlohmann::json to_json(const MatchReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& d : r.rows)
    rows.push_back({{"key", d.key},
                    {"label", d.label},
                    {"calc", d.calc},
                    {"ref", d.ref},
                    {"deviation", d.deviation},
                    {"tol", d.tol},
                    {"passed", d.passed}});
  return {{"max_dev", r.max_dev}, {"argmax", r.argmax},     {"rows_passed", r.rows_passed},
          {"rows_failed", r.rows_failed}, {"rows_flagged", r.rows_flagged}, {"missing", r.missing},
          {"flagged", r.flagged}, {"pass", r.pass()},         {"rows", rows}};
}

nlohmann::json flag_manifest() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& name : builtin_names()) {
    const auto t = builtin_reference(name);
    for (const auto& r : t.rows) {
      if (!r.flagged()) continue;
      out.push_back({{"table", name},
                     {"system", r.system},
                     {"label", r.label},
                     {"series", r.series},
                     {"source", source_name(r.source)},
                     {"value", r.value_text},
                     {"flags", std::vector<std::string>(r.flags.begin(), r.flags.end())}});
    }
  }
  return out;
}

}  // namespace nf
