// Command-line front end over the C API.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonfield.h"

using json = nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number_flag(const std::string& flag, const std::string& s) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(flag + ": '" + s + "' is not a number");
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + " is not valid JSON: " + e.what());
  }
}

// "0,1+:4:2" -> state 0,1 plus, 4 nucleons, 2 protons
json parse_occupancy(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("--occ expects N,l[+|-]:count[:protons], got '" + spec + "'");
  std::string st = parts[0];
  std::string sign = "none";
  if (!st.empty() && (st.back() == '+' || st.back() == '-')) {
    sign = st.back() == '+' ? "plus" : "minus";
    st.pop_back();
  }
  const auto comma = st.find(',');
  if (comma == std::string::npos) throw UsageError("--occ state must look like N,l, got '" + parts[0] + "'");
  try {
    json o = {{"n", std::stoi(st.substr(0, comma))}, {"l", std::stoi(st.substr(comma + 1))}, {"sign", sign},
              {"count", std::stoi(parts[1])}};
    if (parts.size() == 3) o["protons"] = std::stoi(parts[2]);
    return o;
  } catch (const std::logic_error&) {
    throw UsageError("--occ expects integers, got '" + spec + "'");
  }
}

int run(const std::string& op, const json& args, const std::string& format) {
  nf_context* ctx = nf_context_create();
  if (!ctx) return kExitError;
  char* out = nullptr;
  const std::string text = args.dump();
  const nf_status st = nf_call(ctx, op.c_str(), text.c_str(), format.c_str(), &out);
  int code = 0;
  if (st != NF_OK) {
    std::cerr << "error (" << nf_status_name(st) << "): " << nf_last_error(ctx) << "\n";
    const bool input = st == NF_INVALID_ARGUMENT || st == NF_NOT_FOUND || st == NF_PARSE_ERROR ||
                       st == NF_INVARIANT_VIOLATION || st == NF_DOMAIN_ERROR;
    code = input ? kExitUsage : kExitError;
  } else {
    std::fwrite(out, 1, std::strlen(out), stdout);
    if (nf_last_pass(ctx) == 0) code = kExitFail;
  }
  nf_free_string(out);
  nf_context_destroy(ctx);
  return code;
}

template <class T>
void put(json& a, const char* key, const std::optional<T>& v) {
  if (v) a[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonfield: atomic spectra, pionic shell model and root systems"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "csv", "json"}));

  std::string op;
  json args = json::object();

  // atomic
  auto* atomic = app.add_subcommand("atomic", "He II and hydrogen spectra");
  atomic->require_subcommand(1);
  std::string system;
  std::optional<double> d, g;
  int n_max = 10;
  auto* spectrum = atomic->add_subcommand("spectrum", "level and transition energies");
  spectrum->add_option("--system", system, "heII or hydrogen")->required();
  spectrum->add_option("--d", d, "nonlinear-term scale d");
  spectrum->add_option("--g", g, "mass-interaction constant g");
  spectrum->add_option("--n-max", n_max, "largest principal number");
  spectrum->callback([&] {
    op = "atomic_spectrum";
    args = {{"system", system}, {"n_max", n_max}};
    put(args, "d", d);
    put(args, "g", g);
  });
  std::string fit_file, fit_format;
  std::optional<double> d0, g0;
  auto* fit = atomic->add_subcommand("fit", "least-squares (d, g) against observed lines");
  fit->add_option("--system", system, "heII or hydrogen")->required();
  fit->add_option("--file", fit_file, "observed table (CSV or JSON); default: the builtin observed column");
  fit->add_option("--input-format", fit_format, "csv or json when the extension is ambiguous");
  fit->add_option("--d0", d0, "starting d");
  fit->add_option("--g0", g0, "starting g");
  fit->callback([&] {
    op = "atomic_fit";
    args = {{"system", system}};
    if (!fit_file.empty()) args["file"] = fit_file;
    if (!fit_format.empty()) args["format"] = fit_format;
    put(args, "d0", d0);
    put(args, "g0", g0);
  });

  // li
  int li_n = 10, li_l = 2;
  auto* li = app.add_subcommand("li", "Li I levels");
  li->add_option("--n-max", li_n, "largest n");
  li->add_option("--l-max", li_l, "largest l");
  li->callback([&] {
    op = "li";
    args = {{"n_max", li_n}, {"l_max", li_l}};
  });

  // nuclei
  auto* nuclei = app.add_subcommand("nuclei", "pionic shell model");
  nuclei->require_subcommand(1);
  int z = 0, a = 0, max_n = 4, max_l = 4, avg_from = 3;
  std::string calibration = "base";
  std::optional<double> subtraction;
  auto* levels = nuclei->add_subcommand("levels", "per-nucleon and pair level table");
  levels->add_option("--z", z, "protons")->required();
  levels->add_option("--a", a, "mass number")->required();
  levels->add_option("--calibration", calibration, "base or so")->check(CLI::IsMember({"base", "so"}));
  levels->add_option("--max-n", max_n, "largest N");
  levels->add_option("--max-l", max_l, "largest l");
  levels->add_option("--average-from", avg_from, "first shell folded into averages");
  levels->add_option("--subtraction", subtraction, "subtraction per nucleon in MeV");
  levels->callback([&] {
    op = "levels";
    args = {{"z", z}, {"a", a}, {"calibration", calibration}, {"max_n", max_n}, {"max_l", max_l}, {"average_from_shell", avg_from}};
    put(args, "subtraction", subtraction);
  });

  std::string config_file;
  std::vector<std::string> occ;
  std::optional<double> observed_binding;
  std::optional<std::vector<int>> field;
  auto config_json = [&]() -> json {
    if (!config_file.empty()) {
      if (!occ.empty()) throw UsageError("--config and --occ are exclusive");
      return read_json_file(config_file);
    }
    if (occ.empty() || z == 0 || a == 0) throw UsageError("give --config FILE or --z, --a and at least one --occ");
    json c = {{"z", z}, {"a", a}, {"calibration", calibration}, {"occupancy", json::array()}};
    for (const auto& o : occ) c["occupancy"].push_back(parse_occupancy(o));
    if (field) c["field"] = {{"z", (*field)[0]}, {"a", (*field)[1]}};
    return c;
  };
  auto add_config_flags = [&](CLI::App* s) {
    s->add_option("--config", config_file, "configuration JSON file");
    s->add_option("--z", z, "protons");
    s->add_option("--a", a, "mass number");
    s->add_option("--calibration", calibration, "base or so")->check(CLI::IsMember({"base", "so"}));
    s->add_option("--occ", occ, "occupied state N,l[+|-]:count[:protons]; repeatable");
    s->add_option("--field", field, "Z A of the field the nucleons move in")->expected(2);
  };
  auto* config = nuclei->add_subcommand("config", "configuration energy and required subtraction");
  add_config_flags(config);
  config->add_option("--observed", observed_binding, "observed binding in MeV");
  config->callback([&] {
    op = "configuration";
    args = {{"configuration", config_json()}};
    put(args, "observed_binding", observed_binding);
  });

  std::string rules_file;
  std::optional<double> max_energy;
  std::vector<double> observed;
  double tol = 0.05;
  auto excite_args = [&] {
    json r = {{"configuration", config_json()}};
    r["rules"] = rules_file.empty() ? json::object() : read_json_file(rules_file);
    put(r, "max_energy", max_energy);
    return r;
  };
  auto* excite = nuclei->add_subcommand("excite", "enumerate excitations under a rule set");
  add_config_flags(excite);
  excite->add_option("--rules", rules_file, "rules JSON file");
  excite->add_option("--max-energy", max_energy, "largest excitation energy in MeV");
  excite->callback([&] {
    op = "excitations";
    args = excite_args();
  });
  auto* match = nuclei->add_subcommand("match", "assign observed lines to enumerated excitations");
  add_config_flags(match);
  match->add_option("--rules", rules_file, "rules JSON file");
  match->add_option("--max-energy", max_energy, "largest excitation energy in MeV");
  match->add_option("--observed", observed, "observed lines in MeV")->required()->delimiter(',');
  match->add_option("--tol", tol, "matching tolerance in MeV");
  match->callback([&] {
    op = "excitations";
    args = excite_args();
    args["observed"] = observed;
    args["tol"] = tol;
  });

  std::optional<int> chain_p;
  std::optional<double> k1;
  auto* chain = nuclei->add_subcommand("chain", "isotope chain lengths");
  chain->add_option("--p", chain_p, "protons (default 1..8)");
  chain->add_option("--k1", k1, "suppression constant");
  chain->callback([&] {
    op = "chain";
    args = json::object();
    put(args, "p", chain_p);
    put(args, "k1", k1);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "algebraic root systems");
  solve->require_subcommand(1);
  double k = 0;
  int count = 0;
  auto* coherent = solve->add_subcommand("coherent", "coherent-state roots");
  coherent->add_option("--k", k, "coupling")->required();
  coherent->add_option("--count", count, "number of roots")->required();
  coherent->callback([&] {
    op = "coherent";
    args = {{"k", k}, {"count", count}};
  });
  double m = 0, g2 = 0, g4 = 0;
  int big_n = 0, l = 0;
  auto* gluonic = solve->add_subcommand("gluonic", "confinement root system");
  gluonic->add_option("--m", m, "mass")->required();
  gluonic->add_option("--g2", g2, "g2")->required();
  gluonic->add_option("--g4", g4, "g4")->required();
  gluonic->add_option("--N", big_n, "number of roots")->required();
  gluonic->add_option("--l", l, "orbital number");
  gluonic->callback([&] {
    op = "gluonic";
    args = {{"m", m}, {"g2", g2}, {"g4", g4}, {"N", big_n}, {"l", l}};
  });
  std::string coherence_case;
  std::vector<std::string> params;
  auto* coherence = solve->add_subcommand("coherence", "coherence-condition residuals");
  coherence->add_option("--case", coherence_case, "linear_vacuum, quadratic_vacuum, log_state or coulomb_w_vacuum")->required();
  coherence->add_option("--param", params, "name=value; repeatable");
  coherence->callback([&] {
    op = "coherence";
    json named = json::object();
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + p + "'");
      named[p.substr(0, eq)] = number_flag("--param", p.substr(eq + 1));
    }
    args = {{"case", coherence_case}, {"params", named}};
  });

  // waves
  auto* waves = app.add_subcommand("waves", "nonlinear wave pair");
  waves->require_subcommand(1);
  double p0 = 0, dp0 = 0, x_end = 0, step = 1e-3, x0 = 0;
  std::optional<double> v0, dv0;
  int every = 100;
  auto* integrate = waves->add_subcommand("integrate", "RK4 trajectory");
  integrate->add_option("--p0", p0, "p(x0)")->required();
  integrate->add_option("--dp0", dp0, "p'(x0)")->required();
  integrate->add_option("--v0", v0, "v(x0), default p0");
  integrate->add_option("--dv0", dv0, "v'(x0), default dp0");
  integrate->add_option("--x0", x0, "start");
  integrate->add_option("--x-end", x_end, "end")->required();
  integrate->add_option("--step", step, "step size");
  integrate->add_option("--every", every, "print every n-th point");
  integrate->callback([&] {
    op = "waves_integrate";
    args = {{"p0", p0}, {"dp0", dp0}, {"x0", x0}, {"x_end", x_end}, {"step", step}, {"every", every}};
    put(args, "v0", v0);
    put(args, "dv0", dv0);
  });
  double c_first = 0;
  auto* turning = waves->add_subcommand("turning", "turning points for a first-integral value");
  turning->add_option("--C", c_first, "first integral, in [-1/e, 0)")->required();
  turning->callback([&] {
    op = "waves_turning";
    args = {{"C", c_first}};
  });

  // fluid
  std::string mode = "ideal", branch = "subsonic";
  std::vector<double> xs;
  double fk = 0, fc = 1, fa = 0, fb = 0;
  std::optional<double> rho, q;
  auto* fluid = app.add_subcommand("fluid", "exact stream profiles");
  fluid->add_option("--mode", mode, "ideal or rotational")->check(CLI::IsMember({"ideal", "rotational"}));
  fluid->add_option("--x", xs, "positions")->required()->delimiter(',');
  fluid->add_option("--k", fk, "ideal stream constant k");
  fluid->add_option("--c", fc, "light speed scale c");
  fluid->add_option("--rho", rho, "density, adds the pressure column");
  fluid->add_option("--q", q, "charge density for the pressure column");
  fluid->add_option("--A", fa, "rotational constant A");
  fluid->add_option("--B", fb, "rotational constant B");
  fluid->add_option("--branch", branch, "subsonic or supersonic")->check(CLI::IsMember({"subsonic", "supersonic"}));
  fluid->callback([&] {
    op = "fluid";
    args = {{"mode", mode}, {"x", xs}};
    if (mode == "ideal") {
      args["k"] = fk;
      args["c"] = fc;
      put(args, "rho", rho);
      put(args, "q", q);
    } else {
      args["A"] = fa;
      args["B"] = fb;
      args["branch"] = branch;
    }
  });

  // reproduce
  std::string table = "all";
  bool all_rows = false;
  auto* reproduce = app.add_subcommand("reproduce", "recompute a printed table and compare");
  reproduce->add_option("--table", table, "table name or 'all'");
  reproduce->add_flag("--rows", all_rows, "list every compared row, not only failures");
  reproduce->callback([&] {
    op = "reproduce";
    args = {{"table", table}, {"rows", all_rows}};
  });

  // serve
  std::string host = "127.0.0.1";
  int port = 8765;
  auto* serve = app.add_subcommand("serve", "local HTTP+JSON service");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port, 0 picks a free one");
  serve->callback([&] { op = "serve"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (op == "serve") {
    nf_context* ctx = nf_context_create();
    nf_server* s = nullptr;
    if (nf_server_start(ctx, host.c_str(), port, &s) != NF_OK) {
      std::cerr << "error: " << nf_last_error(ctx) << "\n";
      nf_context_destroy(ctx);
      return kExitError;
    }
    std::cerr << "nonfield " << nf_version() << " listening on http://" << host << ":" << nf_server_port(s) << "\n";
    nf_server_wait(s);
    nf_server_stop(s);
    nf_context_destroy(ctx);
    return 0;
  }
  return run(op, args, format);
}
