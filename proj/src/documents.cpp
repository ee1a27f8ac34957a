#include "nonfield/documents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "nonfield/atomic.hpp"
#include "nonfield/calibration.hpp"
#include "nonfield/dynamics.hpp"
#include "nonfield/errors.hpp"
#include "nonfield/refdata.hpp"
#include "nonfield/reproduce.hpp"
#include "nonfield/solvers.hpp"

namespace nf::doc {

namespace {

// ---- argument access with typed errors

const json& need(const json& a, const char* key) {
  if (!a.is_object() || !a.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return a.at(key);
}

double num(const json& a, const char* key) {
  const json& v = need(a, key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double num(const json& a, const char* key, double def) { return a.is_object() && a.contains(key) ? num(a, key) : def; }

int integer(const json& a, const char* key) {
  const json& v = need(a, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

int integer(const json& a, const char* key, int def) { return a.is_object() && a.contains(key) ? integer(a, key) : def; }

std::string text(const json& a, const char* key) {
  const json& v = need(a, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string text(const json& a, const char* key, const std::string& def) {
  return a.is_object() && a.contains(key) ? text(a, key) : def;
}

bool flag(const json& a, const char* key, bool def) {
  if (!a.is_object() || !a.contains(key)) return def;
  if (!a.at(key).is_boolean()) throw ParseError(std::string("field '") + key + "' must be true or false");
  return a.at(key).get<bool>();
}

std::vector<double> numbers(const json& a, const char* key) {
  std::vector<double> out;
  if (!a.is_object() || !a.contains(key)) return out;
  const json& v = a.at(key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array of numbers");
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(std::string("field '") + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json column(const std::string& name, int digits = -1) { return {{"name", name}, {"digits", digits}}; }

json make_doc(const std::string& op) { return {{"schema_version", kSchemaVersion}, {"op", op}}; }

json atomic_constants(const AtomicModelParams& p) {
  return {{"alpha", p.alpha}, {"mass_ev", p.mass}, {"Z", p.Z}, {"d", p.d}, {"g", p.g}};
}

// ---- nuclei

json level_doc(const LevelTable& t, const Calibration& cal) {
  json d = make_doc("levels");
  d["constants"] = calibration_json(cal);
  d["field"] = {{"z", t.field.Z},         {"a", t.field.A},
                {"Ga", t.field.Ga},       {"coulomb", t.field.coulomb},
                {"so", t.field.so_enabled}, {"subtraction_per_nucleon", t.subtraction}};
  json rows = json::array(), trows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"state", r.state.label()},
                    {"n", r.state.N},
                    {"l", r.state.l},
                    {"sign", sign_name(r.state.sign)},
                    {"pionic_proton", r.pionic_proton},
                    {"pionic_neutron", r.pionic_neutron},
                    {"proton", r.proton},
                    {"neutron", r.neutron},
                    {"pair", r.pair},
                    {"open", r.open},
                    {"in_average", r.in_average}});
    trows.push_back({r.state.label(), r.proton, r.neutron, r.pair, r.open ? "open" : "closed"});
  }
  json avgs = json::array();
  for (const auto& a : t.averages) {
    json members = json::array();
    for (const auto& [n, l] : a.members) members.push_back({n, l});
    avgs.push_back({{"state", std::to_string(a.shell) + "av"},
                    {"shell", a.shell},
                    {"members", members},
                    {"pionic_proton", a.pionic_proton},
                    {"pionic_neutron", a.pionic_neutron},
                    {"pair", a.pair},
                    {"range", {a.range_lo, a.range_hi}}});
    trows.push_back({std::to_string(a.shell) + "av", nullptr, nullptr, a.pair, "average"});
  }
  d["rows"] = rows;
  d["averages"] = avgs;
  d["table"] = {{"columns", {column("state"), column("proton", 3), column("neutron", 3), column("pair", 3), column("status")}},
                {"rows", trows}};
  return d;
}

json op_levels(const json& a) {
  const int z = integer(a, "z"), A = integer(a, "a");
  const Calibration cal = calibration_by_tag(text(a, "calibration", "base"));
  const PionicField f = a.contains("coulomb") ? make_field(z, A, cal, flag(a, "coulomb", true)) : make_field(z, A, cal);
  std::optional<double> sub;
  if (a.contains("subtraction")) sub = num(a, "subtraction");
  return level_doc(level_table(f, integer(a, "max_n", 4), integer(a, "max_l", 4), integer(a, "average_from_shell", 3), sub),
                   cal);
}

json transition_json(const Transition& t) {
  json moves = json::array();
  for (const auto& m : t.moves)
    moves.push_back({{"from", m.from.label()}, {"to", m.to.label()}, {"count", m.count}, {"protons", m.protons}});
  return {{"label", t.label()}, {"energy", t.energy}, {"moves", moves}};
}

json op_configuration(const json& a) {
  const ShellConfiguration c = configuration_from_json(a.contains("configuration") ? a.at("configuration") : a);
  const ConfigurationEnergy e = configuration_energy(c);
  const PionicField f = c.field();
  json d = make_doc("configuration");
  d["constants"] = calibration_json(calibration_by_tag(c.calibration));
  d["configuration"] = to_json(c);
  d["pionic_total"] = e.pionic_total;
  d["subtraction_total"] = e.subtraction_total;
  d["binding_with_subtraction"] = e.binding_with_subtraction;
  double sub = subtraction_per_nucleon(f);
  json trows = json::array({json::array({"pionic_total", e.pionic_total}),
                            json::array({"binding_with_subtraction", e.binding_with_subtraction})});
  if (a.contains("observed_binding")) {
    const RequiredSubtraction r = required_subtraction(c, num(a, "observed_binding"));
    d["observed_binding"] = num(a, "observed_binding");
    const double excess = r.per_nucleon - sub;
    d["required_subtraction"] = {
        {"per_nucleon", r.per_nucleon}, {"excess_per_nucleon", excess}, {"underbinds", r.underbinds}};
    trows.push_back(json::array({"required_subtraction", r.per_nucleon}));
    trows.push_back(json::array({"excess_subtraction", excess}));
    sub = std::max(0.0, r.per_nucleon);
  } else {
    d["required_subtraction"] = nullptr;
  }
  const StatePartition p = open_states(level_table(f, integer(a, "max_n", 4), integer(a, "max_l", 4)), sub);
  json open = json::array(), res = json::array();
  for (const auto& s : p.open) open.push_back(s.label());
  for (const auto& s : p.resonance) res.push_back(s.label());
  d["open_states"] = {{"subtraction_per_nucleon", sub}, {"open", open}, {"resonance", res}};
  d["table"] = {{"columns", {column("quantity"), column("MeV", 3)}}, {"rows", trows}};
  return d;
}

json op_excitations(const json& a) {
  const ShellConfiguration c = configuration_from_json(need(a, "configuration"));
  const ExcitationRules rules = rules_from_json(a.contains("rules") ? a.at("rules") : json::object());
  const double max_energy = num(a, "max_energy", rules.max_energy_mev);
  const PionicField f = c.field();
  const LevelTable t = level_table(f, rules.max_n, rules.max_l, rules.average_from_shell, rules.subtraction_mev);
  const auto list = enumerate_excitations(c, rules, t, max_energy);
  json d = make_doc("excitations");
  d["constants"] = calibration_json(calibration_by_tag(c.calibration));
  d["configuration"] = to_json(c);
  d["rules"] = to_json(rules);
  d["max_energy"] = max_energy;
  json tr = json::array(), trows = json::array();
  for (const auto& x : list) tr.push_back(transition_json(x));
  d["transitions"] = tr;
  const auto observed = numbers(a, "observed");
  if (a.contains("observed")) {
    const auto m = match_lines(list, observed, num(a, "tol", 0.05));
    json ms = json::array();
    for (const auto& x : m) {
      ms.push_back({{"transition", transition_json(x.transition)}, {"observed", x.observed}, {"deviation", x.deviation}});
      trows.push_back({x.transition.label(), x.transition.energy, x.observed, x.deviation});
    }
    d["matches"] = ms;
    d["table"] = {{"columns", {column("transition"), column("energy", 3), column("observed", 3), column("deviation", 3)}},
                  {"rows", trows}};
  } else {
    for (const auto& x : list) trows.push_back({x.label(), x.energy});
    d["table"] = {{"columns", {column("transition"), column("energy", 3)}}, {"rows", trows}};
  }
  return d;
}

json op_chain(const json& a) {
  const double k1 = num(a, "k1", kK1);
  std::vector<int> ps;
  if (a.contains("p"))
    ps.push_back(integer(a, "p"));
  else
    for (int p = 1; p <= 8; ++p) ps.push_back(p);
  json d = make_doc("chain");
  d["constants"] = {{"k1", k1}};
  json rows = json::array(), trows = json::array();
  for (int p : ps) {
    const auto n = chain_length(p, k1);
    rows.push_back({{"p", p}, {"max_a", n ? json(*n) : json(nullptr)}, {"limited", n.has_value()}});
    trows.push_back({p, n ? json(*n) : json("no limit")});
  }
  d["rows"] = rows;
  d["table"] = {{"columns", {column("p"), column("max_a")}}, {"rows", trows}};
  return d;
}

// ---- atomic

json op_atomic_spectrum(const json& a) {
  const std::string system = text(a, "system");
  AtomicModelParams p = atomic_params(system);
  p.d = num(a, "d", p.d);
  p.g = num(a, "g", p.g);
  p.validate();
  const int n_max = integer(a, "n_max", 10);
  if (n_max < 2 || n_max > 200) throw InvalidArgument("n_max must lie in [2, 200]");
  json d = make_doc("atomic_spectrum");
  d["system"] = system;
  d["constants"] = atomic_constants(p);
  d["unit"] = "eV";
  json rows = json::array(), trows = json::array();
  for (const auto& s : spectrum_states(n_max)) {
    const double b = binding_energy(p, s), t = transition_energy(p, s);
    rows.push_back({{"label", s.label},
                    {"n", s.principal()},
                    {"N", s.N},
                    {"l", s.l},
                    {"two_j", s.two_j},
                    {"series", series_name(s.series())},
                    {"binding", b},
                    {"transition", t}});
    trows.push_back({s.label, series_name(s.series()), b, t});
  }
  const double ground = binding_energy(p, QuantumState::make(0, 0, 1));
  d["ground"] = ground;
  d["rows"] = rows;
  d["notes"] = {"ground 1s1/2 binding " + [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7f", ground);
    return std::string(buf);
  }() + " eV"};
  d["table"] = {{"columns", {column("state"), column("series"), column("binding", 7), column("transition", 7)}},
                {"rows", trows}};
  return d;
}

json op_atomic_fit(const json& a) {
  const std::string system = text(a, "system");
  ReferenceTable obs;
  if (a.contains("file"))
    obs = load_reference(text(a, "file"), text(a, "format", ""));
  else
    obs = builtin_reference(system).only(Source::paper_obs);
  const AtomicFit fit = calibrate_atomic(system, obs, num(a, "d0", 0.05), num(a, "g0", 0.15));
  json d = make_doc("atomic_fit");
  d["fit"] = to_json(fit);
  d["constants"] = atomic_constants(atomic_params(system));
  char buf[128];
  std::snprintf(buf, sizeof buf, "d = %.9g, g = %.9g, %d iterations, %s", fit.d, fit.g, fit.iterations,
                fit.converged ? "converged" : "not converged");
  d["notes"] = {buf};
  json trows = json::array();
  for (const auto& r : fit.rows) trows.push_back({r.label, r.observed, r.calculated, r.residual});
  d["table"] = {{"columns", {column("state"), column("observed", 7), column("calculated", 7), column("residual", 7)}},
                {"rows", trows}};
  d["pass"] = fit.converged;
  return d;
}

json op_li(const json& a) {
  const int n_max = integer(a, "n_max", 10), l_max = integer(a, "l_max", 2);
  if (n_max < 2 || n_max > 200 || l_max < 0) throw InvalidArgument("need 2 <= n_max <= 200 and l_max >= 0");
  json d = make_doc("li");
  d["constants"] = {{"l0", {{"a", li_params_s().a}, {"b", li_params_s().b}, {"g", li_params_s().g}}},
                    {"lpos", {{"a", li_params_nonzero().a}, {"b", li_params_nonzero().b}, {"g", li_params_nonzero().g}}},
                    {"mass_ev", li_params_s().mass},
                    {"limit", li_params_s().limit_energy}};
  json rows = json::array(), trows = json::array();
  for (int l = 0; l <= l_max; ++l)
    for (int n = std::max(2, l + 1); n <= n_max; ++n) {
      const LiLevel v = li_level(li_params_for(l), n, l);
      rows.push_back({{"n", n}, {"l", l}, {"binding", v.binding_tilde}, {"transition", v.transition}});
      trows.push_back({std::to_string(n) + "," + std::to_string(l), v.binding_tilde, v.transition});
    }
  d["rows"] = rows;
  d["table"] = {{"columns", {column("n,l"), column("binding", 6), column("transition", 6)}}, {"rows", trows}};
  return d;
}

// ---- calibration

json op_calibrate_nuclei(const json& a) {
  const bool so = flag(a, "so", false);
  const NucleiFit fit = calibrate_nuclei(num(a, "deuteron", 2.224), num(a, "alpha", 28.284), so);
  json d = make_doc("calibrate_nuclei");
  d["fit"] = to_json(fit);
  d["constants"] = calibration_json(to_calibration(fit));
  d["table"] = {{"columns", {column("parameter"), column("value", 6)}},
                {"rows", json::array({json::array({"G", fit.G}), json::array({"k", fit.k}), json::array({"d", fit.d})})}};
  d["pass"] = fit.converged;
  return d;
}

json op_calibrate_k1(const json& a) {
  const K1Fit fit = calibrate_k1(num(a, "triton", 8.481), calibration_by_tag(text(a, "calibration", "base")));
  json d = make_doc("calibrate_k1");
  d["fit"] = to_json(fit);
  d["table"] = {{"columns", {column("parameter"), column("value", 6)}}, {"rows", json::array({json::array({"k1", fit.k1}), json::array({"forward", fit.forward})})}};
  return d;
}

// ---- solvers

SolverOptions solver_options(const json& a) {
  SolverOptions o;
  o.max_iter = integer(a, "max_iter", o.max_iter);
  o.target = num(a, "target", o.target);
  o.accept = num(a, "accept", o.accept);
  return o;
}

json op_coherent(const json& a) {
  const CoherentRootSet r = solve_coherent_roots(num(a, "k"), integer(a, "count"), solver_options(a));
  json d = make_doc("coherent");
  d["k"] = r.k_int;
  d["roots"] = r.roots;
  d["max_residual"] = r.max_residual;
  d["iterations"] = r.iterations;
  json trows = json::array();
  for (size_t i = 0; i < r.roots.size(); ++i) trows.push_back({static_cast<int>(i), r.roots[i]});
  d["table"] = {{"columns", {column("i"), column("root", 7)}}, {"rows", trows}};
  return d;
}

json op_gluonic(const json& a) {
  const GluonicSystem g =
      solve_gluonic_system(num(a, "m"), num(a, "g2"), num(a, "g4"), integer(a, "N"), integer(a, "l", 0), solver_options(a));
  const GluonicIdentities id = gluonic_identities(g);
  json d = make_doc("gluonic");
  d["parameters"] = {{"m", g.m}, {"g2", g.g2}, {"g3", g.g3}, {"g4", g.g4}, {"N", g.N}, {"l", g.l}, {"A", g.A}, {"B", g.B}};
  d["roots"] = g.roots;
  d["iterations"] = g.iterations;
  d["identities"] = {{"a2_minus_2mg4", id.a2_minus_2mg4},
                     {"ab_minus_mg3", id.ab_minus_mg3},
                     {"summed", id.summed},
                     {"count", id.count},
                     {"max_abs", id.max_abs()}};
  json trows = json::array();
  for (size_t i = 0; i < g.roots.size(); ++i) trows.push_back({static_cast<int>(i), g.roots[i]});
  d["table"] = {{"columns", {column("i"), column("R", 9)}}, {"rows", trows}};
  return d;
}

json op_coherence(const json& a) {
  std::map<std::string, double> params;
  if (a.contains("params")) {
    if (!a.at("params").is_object()) throw ParseError("field 'params' must be an object of numbers");
    for (const auto& [k, v] : a.at("params").items()) {
      if (!v.is_number()) throw ParseError("coherence parameter '" + k + "' must be a number");
      params[k] = v.get<double>();
    }
  }
  const CoherenceResult r = coherence_residual(text(a, "case"), params);
  json d = make_doc("coherence");
  d["case"] = r.case_id;
  d["values"] = r.values;
  d["satisfied"] = r.satisfied;
  json trows = json::array();
  for (const auto& [k, v] : r.values) trows.push_back({k, v});
  d["table"] = {{"columns", {column("quantity"), column("value", 10)}}, {"rows", trows}};
  return d;
}

// ---- waves and fluid

json op_waves_integrate(const json& a) {
  WaveState s;
  s.x = num(a, "x0", 0);
  s.p = num(a, "p0");
  s.dp = num(a, "dp0");
  s.v = num(a, "v0", s.p);
  s.dv = num(a, "dv0", s.dp);
  const Trajectory t = integrate_wave_pair(s, num(a, "x_end"), num(a, "step", 1e-3));
  const int every = integer(a, "every", 1);
  if (every < 1) throw InvalidArgument("every must be at least 1");
  json d = make_doc("waves_integrate");
  d["diverged"] = t.diverged;
  const double c0 = wave_first_integral(t.points.front());
  double drift = 0;
  json trows = json::array();
  for (size_t i = 0; i < t.points.size(); ++i) {
    const auto& p = t.points[i];
    const double c = wave_first_integral(p);
    drift = std::max(drift, std::fabs(c - c0));
    if (i % every == 0 || i + 1 == t.points.size()) trows.push_back({p.x, p.p, p.dp, p.v, p.dv, c});
  }
  d["first_integral"] = {{"initial", c0}, {"max_drift", drift}};
  d["points"] = t.points.size();
  d["table"] = {{"columns",
                 {column("x", 6), column("p", 10), column("dp", 10), column("v", 10), column("dv", 10),
                  column("first_integral", 12)}},
                {"rows", trows}};
  return d;
}

json op_waves_turning(const json& a) {
  const TurningPoints t = turning_points(num(a, "C"));
  json d = make_doc("waves_turning");
  d["p_minus"] = t.p_minus;
  d["p_plus"] = t.p_plus;
  d["degenerate"] = t.degenerate;
  d["table"] = {{"columns", {column("root"), column("p", 10)}}, {"rows", json::array({json::array({"p_minus", t.p_minus}), json::array({"p_plus", t.p_plus})})}};
  return d;
}

json op_fluid(const json& a) {
  const std::string mode = text(a, "mode", "ideal");
  std::vector<double> xs = numbers(a, "x");
  if (xs.empty()) throw InvalidArgument("field 'x' needs at least one position");
  json d = make_doc("fluid");
  d["mode"] = mode;
  json trows = json::array();
  if (mode == "ideal") {
    const double k = num(a, "k"), c = num(a, "c", 1.0);
    const bool pressure = a.contains("rho");
    for (double x : xs) {
      const double v = ideal_stream_velocity(k, x, c);
      if (pressure)
        trows.push_back({x, v, stream_pressure(c, num(a, "rho"), num(a, "q", 0.0), v)});
      else
        trows.push_back({x, v});
    }
    d["parameters"] = {{"k", k}, {"c", c}};
    d["table"] = {{"columns", pressure ? json::array({column("x", 6), column("v", 12), column("pressure", 12)})
                                       : json::array({column("x", 6), column("v", 12)})},
                  {"rows", trows}};
  } else if (mode == "rotational") {
    const double A = num(a, "A"), B = num(a, "B", 0.0);
    const FlowBranch br = parse_branch(text(a, "branch", "subsonic"));
    for (double x : xs) trows.push_back({x, rotational_velocity(A, B, x, br)});
    d["parameters"] = {{"A", A}, {"B", B}, {"branch", text(a, "branch", "subsonic")}};
    d["table"] = {{"columns", {column("x", 6), column("v", 12)}}, {"rows", trows}};
  } else {
    throw InvalidArgument("fluid mode must be 'ideal' or 'rotational', got '" + mode + "'");
  }
  return d;
}

// ---- reference data and reproduction

json op_reference(const json& a) {
  const std::string name = text(a, "name");
  const ReferenceTable t = builtin_reference(name);
  json d = make_doc("reference");
  d["reference"] = to_json(t);
  json trows = json::array();
  for (const auto& r : t.rows) {
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    trows.push_back({r.system, r.label, r.series, r.value_text, r.unit, source_name(r.source), flags});
  }
  d["table"] = {{"columns",
                 {column("system"), column("label"), column("series"), column("value"), column("unit"), column("source"),
                  column("flags")}},
                {"rows", trows}};
  return d;
}

json op_reproduce(const json& a) {
  const std::string which = text(a, "table", "all");
  std::vector<std::string> names;
  if (which == "all")
    names = builtin_names();
  else
    names.push_back(which);
  const bool all_rows = flag(a, "rows", false);
  json d = make_doc("reproduce");
  json reports = json::array(), trows = json::array(), notes = json::array();
  bool pass = true;
  for (const auto& n : names) {
    const Reproduction r = reproduce_table(n);
    pass = pass && r.pass();
    reports.push_back(to_json(r));
    std::string unit = r.unit;
    for (const auto& row : builtin_reference(n).rows)
      if (row.key() == r.report.argmax && !row.unit.empty()) unit = row.unit;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %s, %d passed, %d failed, %d flagged, %zu not modelled, max_dev %.3g %s at %s",
                  n.c_str(), r.pass() ? "pass" : "FAIL", r.report.rows_passed, r.report.rows_failed, r.report.rows_flagged,
                  r.report.missing.size(), r.report.max_dev, unit.c_str(), r.report.argmax.c_str());
    notes.push_back(buf);
    for (const auto& e : r.errors) notes.push_back("  error " + e);
    for (const auto& row : r.report.rows)
      if (all_rows || !row.passed) trows.push_back({row.key, row.calc, row.ref, row.deviation, row.tol, row.passed ? "ok" : "FAIL"});
  }
  d["reports"] = reports;
  d["notes"] = notes;
  d["pass"] = pass;
  d["table"] = {{"columns",
                 {column("row"), column("engine", 7), column("printed", 7), column("deviation", 7), column("tol", 7),
                  column("status")}},
                {"rows", trows}};
  return d;
}

json op_flags(const json&) {
  json d = make_doc("flags");
  d["flags"] = flag_manifest();
  json trows = json::array();
  for (const auto& f : d["flags"]) trows.push_back({f.value("table", ""), f.value("system", ""), f.value("label", "")});
  d["table"] = {{"columns", {column("table"), column("system"), column("label")}}, {"rows", trows}};
  return d;
}

const std::map<std::string, std::function<json(const json&)>>& registry() {
  static const std::map<std::string, std::function<json(const json&)>> ops = {
      {"atomic_fit", op_atomic_fit},
      {"atomic_spectrum", op_atomic_spectrum},
      {"calibrate_k1", op_calibrate_k1},
      {"calibrate_nuclei", op_calibrate_nuclei},
      {"chain", op_chain},
      {"coherence", op_coherence},
      {"coherent", op_coherent},
      {"configuration", op_configuration},
      {"excitations", op_excitations},
      {"flags", op_flags},
      {"fluid", op_fluid},
      {"gluonic", op_gluonic},
      {"levels", op_levels},
      {"li", op_li},
      {"reference", op_reference},
      {"reproduce", op_reproduce},
      {"waves_integrate", op_waves_integrate},
      {"waves_turning", op_waves_turning},
  };
  return ops;
}

std::string format_cell(const json& v, int digits) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[64];
    if (digits >= 0)
      std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
    else
      std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    std::string out = buf;
    // no "-0.000" for values that round to zero
    if (out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
  }
  return v.dump();
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

}  // namespace

const std::vector<std::string>& operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

json dispatch(const std::string& op, const json& args) {
  const auto& ops = registry();
  auto it = ops.find(op);
  if (it == ops.end()) throw NotFound("unknown operation '" + op + "'");
  if (!args.is_object() && !args.is_null()) throw ParseError("operation arguments must be a JSON object");
  return it->second(args.is_null() ? json::object() : args);
}

json calibration_json(const Calibration& c) {
  return {{"calibration", c.tag}, {"G", c.G},   {"k", c.k},   {"d", c.d}, {"so", c.so},
          {"coulomb_c", c.coulomb_c}, {"k1", c.k1}, {"M", kNucleonMass}};
}

ShellConfiguration configuration_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("configuration must be a JSON object");
  ShellConfiguration c;
  c.Z = integer(j, "z");
  c.A = integer(j, "a");
  c.calibration = text(j, "calibration", "base");
  if (c.calibration != "base" && c.calibration != "so")
    throw ParseError("calibration must be 'base' or 'so', got '" + c.calibration + "'");
  if (j.contains("field") && !j.at("field").is_null()) {
    const json& f = j.at("field");
    c.field_override = std::make_pair(integer(f, "z"), integer(f, "a"));
  }
  const json& occ = need(j, "occupancy");
  if (!occ.is_array()) throw ParseError("field 'occupancy' must be an array");
  for (const auto& o : occ) {
    if (!o.is_object()) throw ParseError("occupancy entries must be objects");
    Occupancy x;
    x.state.N = integer(o, "n");
    x.state.l = integer(o, "l");
    x.state.sign = parse_sign(text(o, "sign", "none"));
    x.count = integer(o, "count");
    x.protons = integer(o, "protons", x.count / 2);
    c.occupancy.push_back(x);
  }
  return c;
}

json to_json(const ShellConfiguration& c) {
  json occ = json::array();
  for (const auto& o : c.occupancy)
    occ.push_back({{"n", o.state.N}, {"l", o.state.l}, {"sign", sign_name(o.state.sign)}, {"count", o.count}, {"protons", o.protons}});
  json j = {{"z", c.Z}, {"a", c.A}, {"calibration", c.calibration}, {"occupancy", occ}};
  if (c.field_override) j["field"] = {{"z", c.field_override->first}, {"a", c.field_override->second}};
  return j;
}

ExcitationRules rules_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("rules must be a JSON object");
  ExcitationRules r;
  r.parity = parse_parity(text(j, "parity", "any"));
  r.min_moved = integer(j, "min_moved", r.min_moved);
  r.max_moved = integer(j, "max_moved", r.max_moved);
  r.unit = text(j, "unit", r.unit);
  if (r.unit != "pair" && r.unit != "nucleon") throw ParseError("rule unit must be 'pair' or 'nucleon'");
  if (j.contains("forbidden_pairs")) {
    const json& fp = j.at("forbidden_pairs");
    if (!fp.is_array()) throw ParseError("field 'forbidden_pairs' must be an array of [from, to] pairs");
    for (const auto& p : fp) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw ParseError("forbidden pairs must look like [\"0,0\", \"1,0\"]");
      r.forbidden_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  r.flip_suppressed = flag(j, "flip_suppressed", r.flip_suppressed);
  r.max_energy_mev = num(j, "max_energy_mev", r.max_energy_mev);
  r.targets_open_only = flag(j, "targets_open_only", r.targets_open_only);
  r.spectator_protons = flag(j, "spectator_protons", r.spectator_protons);
  r.average_from_shell = integer(j, "average_from_shell", r.average_from_shell);
  r.max_n = integer(j, "max_n", r.max_n);
  r.max_l = integer(j, "max_l", r.max_l);
  if (j.contains("subtraction_mev") && !j.at("subtraction_mev").is_null()) r.subtraction_mev = num(j, "subtraction_mev");
  if (j.contains("per_state_caps")) {
    const json& m = j.at("per_state_caps");
    if (!m.is_object()) throw ParseError("field 'per_state_caps' must map states to integers");
    for (const auto& [k, v] : m.items()) {
      if (!v.is_number_integer()) throw ParseError("cap for '" + k + "' must be an integer");
      r.per_state_caps[k] = v.get<int>();
    }
  }
  if (j.contains("per_state_parity")) {
    const json& m = j.at("per_state_parity");
    if (!m.is_object()) throw ParseError("field 'per_state_parity' must map states to parities");
    for (const auto& [k, v] : m.items()) {
      if (!v.is_string()) throw ParseError("parity for '" + k + "' must be a string");
      r.per_state_parity[k] = parse_parity(v.get<std::string>());
    }
  }
  r.split_sources = flag(j, "split_sources", r.split_sources);
  return r;
}

json to_json(const ExcitationRules& r) {
  json fp = json::array();
  for (const auto& [a, b] : r.forbidden_pairs) fp.push_back({a, b});
  json caps = json::object(), par = json::object();
  for (const auto& [k, v] : r.per_state_caps) caps[k] = v;
  for (const auto& [k, v] : r.per_state_parity) par[k] = parity_name(v);
  return {{"parity", parity_name(r.parity)},
          {"min_moved", r.min_moved},
          {"max_moved", r.max_moved},
          {"unit", r.unit},
          {"forbidden_pairs", fp},
          {"flip_suppressed", r.flip_suppressed},
          {"max_energy_mev", r.max_energy_mev},
          {"targets_open_only", r.targets_open_only},
          {"spectator_protons", r.spectator_protons},
          {"average_from_shell", r.average_from_shell},
          {"max_n", r.max_n},
          {"max_l", r.max_l},
          {"subtraction_mev", r.subtraction_mev ? json(*r.subtraction_mev) : json(nullptr)},
          {"per_state_caps", caps},
          {"per_state_parity", par},
          {"split_sources", r.split_sources}};
}

std::string render(const json& d, const std::string& format) {
  if (format == "json") return d.dump(2) + "\n";
  if (format != "csv" && format != "human") throw InvalidArgument("format must be human, csv or json, got '" + format + "'");
  std::vector<std::string> names;
  std::vector<int> digits;
  std::vector<std::vector<std::string>> cells;
  if (d.contains("table")) {
    for (const auto& c : d["table"]["columns"]) {
      names.push_back(c["name"].get<std::string>());
      digits.push_back(c["digits"].get<int>());
    }
    for (const auto& row : d["table"]["rows"]) {
      std::vector<std::string> line;
      for (size_t i = 0; i < row.size() && i < names.size(); ++i) line.push_back(format_cell(row[i], digits[i]));
      line.resize(names.size());
      cells.push_back(line);
    }
  }
  std::ostringstream os;
  if (format == "csv") {
    for (size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << csv_quote(names[i]);
    if (!names.empty()) os << "\n";
    for (const auto& line : cells) {
      for (size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_quote(line[i]);
      os << "\n";
    }
    return os.str();
  }
  if (d.contains("notes"))
    for (const auto& n : d["notes"]) os << n.get<std::string>() << "\n";
  if (names.empty() || cells.empty()) return os.str();
  std::vector<size_t> w(names.size());
  for (size_t i = 0; i < names.size(); ++i) w[i] = names[i].size();
  for (const auto& line : cells)
    for (size_t i = 0; i < line.size(); ++i) w[i] = std::max(w[i], line[i].size());
  auto put = [&](const std::vector<std::string>& line, bool header) {
    for (size_t i = 0; i < line.size(); ++i) {
      const std::string pad(w[i] - line[i].size(), ' ');
      const bool right = !header && digits[i] >= 0;
      if (i) os << "  ";
      os << (right ? pad + line[i] : line[i] + (i + 1 < line.size() ? pad : ""));
    }
    os << "\n";
  };
  put(names, true);
  for (const auto& line : cells) put(line, false);
  return os.str();
}

}  // namespace nf::doc
