// One line per headline criterion; exit status 1 when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "nonfield/atomic.hpp"
#include "nonfield/calibration.hpp"
#include "nonfield/dynamics.hpp"
#include "nonfield/errors.hpp"
#include "nonfield/nuclei.hpp"
#include "nonfield/refdata.hpp"
#include "nonfield/solvers.hpp"
#include "oracles.hpp"

using namespace nf;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// shared by the He II and hydrogen criteria
Verdict spectrum_table(const std::string& name, const AtomicModelParams& p, const std::string& anchor_series,
                       double anchor, double anchor_tol) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = builtin_reference(name).only(Source::paper_calc);
  int checked = 0;
  double worst_plus = 0, worst_other = 0;
  std::string where;
  for (const auto& r : table.rows) {
    if (r.flagged() || !r.has_value()) continue;
    if (r.series == anchor_series) continue;
    auto q = p;
    if (r.series == "coulomb_only") q.d = q.g = 0;
    const auto s = QuantumState::make(*r.n - (*r.two_j + 1) / 2, *r.l, *r.two_j);
    const double dev = std::fabs(transition_energy(q, s) - r.value());
    const bool plus = r.series == "N0_plus";
    const double tol = plus ? 2e-6 : 2e-5;
    ++checked;
    (plus ? worst_plus : worst_other) = std::max(plus ? worst_plus : worst_other, dev);
    if (dev > tol) v.check(false, r.label + " off by " + fmt("%.2e", dev));
  }
  const double ground = binding_energy(p, QuantumState::make(0, 0, 1));
  v.check(std::fabs(ground - anchor) <= anchor_tol, "anchor " + fmt("%.7f", ground));
  const double secs = seconds_since(t0);
  v.check(secs < 1.0, fmt("runtime %.2f s", secs));
  v.detail = std::to_string(checked) + " rows, max dev " + fmt("%.1e (N=0,j=l+1/2) / %.1e (others)", worst_plus, worst_other) +
             (v.detail.empty() ? "" : ": " + v.detail);
  return v;
}

Verdict he2() {
  const auto p = he2_params();
  Verdict v = spectrum_table("heII", p, "ground", 54.4177630, 1e-6);
  v.check(p.alpha == 7.297352568e-3 && p.mass == 0.510928873e6 && p.Z == 2 && p.d == 0.05634 && p.g == 0.1487,
          "embedded constants differ");
  return v;
}

Verdict hydrogen() {
  const auto p = hydrogen_params();
  Verdict v = spectrum_table("hydrogen", p, "binding", 13.5984340, 1e-6);
  v.check(p.mass == 0.5107207446e6 && p.Z == 1 && p.d == 0.0731 && p.g == 0.20193, "embedded constants differ");
  return v;
}

Verdict lithium() {
  Verdict v;
  int good = 0, total = 0;
  std::string misses, flagged;
  for (const auto& r : builtin_reference("liI").only(Source::paper_calc).rows) {
    if (r.flagged()) {
      flagged += " " + r.label;
      continue;
    }
    if (!r.n) continue;
    ++total;
    const double calc = li_level(li_params_for(*r.l), *r.n, *r.l).transition;
    if (std::fabs(calc - r.value()) <= 5e-5)
      ++good;
    else
      misses += " (" + r.label + ")";
  }
  v.check(good >= 40, "only " + std::to_string(good) + " rows within 5e-5");
  v.detail = std::to_string(good) + "/" + std::to_string(total) + " within 5e-5 eV; misses" + misses + "; flagged" + flagged;
  return v;
}

Verdict nuclei_base() {
  Verdict v;
  const auto base = base_calibration();
  const double deuteron = pair_energy(make_field(1, 2, base), ShellState{});
  v.check(std::fabs(deuteron - 2.223) <= 0.002, fmt("deuteron %.4f", deuteron));
  const double he = pair_energy(make_field(2, 4, base), ShellState{});
  v.check(std::fabs(he - 14.146) <= 0.01, fmt("4He (0,0) %.4f", he));

  // excitation lists and pair ladders use the spin-orbit parameter set
  const auto so_he = level_table(make_field(2, 4, so_calibration()), 4, 5);
  const std::pair<const char*, double> lines[] = {{"4(0,0>0,1)", 17.036}, {"4(0,0>0,2)", 23.914}, {"4(0,0>1,1)", 24.295},
                                                  {"4(0,0>2,0)", 25.264}, {"4(0,0>2,2)", 28.30},  {"4(0,0>3,1)", 28.388},
                                                  {"4(0,0>4,0)", 28.628}};
  double worst = 0;
  for (const auto& [t, want] : lines) {
    const double e = move_energy(so_he, parse_transition(t), "pair");
    worst = std::max(worst, std::fabs(e - want));
    v.check(std::fabs(e - want) <= 0.02, std::string(t) + fmt(" = %.3f", e));
  }
  const double odd = move_energy(so_he, parse_transition("4(0,0>1,0)"), "pair");
  v.check(std::fabs(odd - 19.830) <= 0.02, fmt("4(0,0>1,0) = %.3f, expected 19.830", odd));

  const auto li = level_table(make_field(3, 6, so_calibration()), 6, 6);
  const std::pair<const char*, double> ladder[] = {{"0,0", 21.065}, {"0,1+", 11.783}, {"0,1-", 11.842}, {"1,0", 8.304},
                                                   {"0,2+", 6.089}, {"0,2-", 6.092},  {"1,1+", 5.336}, {"1,1-", 5.353},
                                                   {"2,0", 3.974}};
  for (const auto& [s, want] : ladder) {
    const double e = li.find(ShellState::parse(s))->pair;
    v.check(std::fabs(e - want) <= 0.01, std::string("6Li ") + s + fmt(" = %.4f", e));
  }

  ShellConfiguration c12;
  c12.Z = 6;
  c12.A = 12;
  c12.occupancy = {{ShellState{0, 2}, 4, 2}, {ShellState{1, 0}, 4, 2}, {ShellState{1, 1}, 4, 2}};
  const double b12 = configuration_energy(c12).binding_with_subtraction;
  v.check(std::fabs(b12 - 91.64) <= 0.05, fmt("12C %.3f", b12));
  if (v.pass)
    v.detail = fmt("deuteron %.4f, 4He %.4f, excitations within %.3f", deuteron, he, worst) +
               fmt(", printed 19.930 recomputes to %.3f, 12C %.3f", odd, b12);
  return v;
}

Verdict nuclei_so() {
  Verdict v;
  const auto so = so_calibration();
  const auto d = make_field(1, 2, so);
  const double pair = pair_energy(d, ShellState{});
  const double p = nucleon_energy(d, ShellState{}, true), n = nucleon_energy(d, ShellState{}, false);
  v.check(std::fabs(pair - 2.223) <= 0.002, fmt("deuteron %.4f", pair));
  v.check(std::fabs(p - 1.161) <= 0.002 && std::fabs(n - 1.062) <= 0.002, fmt("split %.4f/%.4f", p, n));
  const auto he = make_field(2, 4, so);
  const double plus = pair_energy(he, ShellState::parse("0,1+")), minus = pair_energy(he, ShellState::parse("0,1-"));
  v.check(std::fabs(plus - 5.628) <= 0.01 && std::fabs(minus - 5.639) <= 0.01, fmt("4He (0,1) %.4f/%.4f", plus, minus));
  v.check(std::fabs(he.Ga - 0.624) <= 0.001, fmt("Ga %.4f", he.Ga));
  ShellConfiguration be;
  be.Z = 4;
  be.A = 8;
  be.calibration = "so";
  be.occupancy = {{ShellState::parse("0,1+"), 2, 1}, {ShellState::parse("0,1-"), 2, 1}, {ShellState{1, 0}, 4, 2}};
  const double b8 = configuration_energy(be).binding_with_subtraction;
  v.check(std::fabs(b8 - 56.289) <= 0.05, fmt("8Be %.3f", b8));
  if (v.pass)
    v.detail = fmt("deuteron %.4f = %.4f + %.4f", pair, p, n) + fmt(", 4He (0,1) %.4f/%.4f", plus, minus) +
               fmt(", Ga %.4f, 8Be %.3f", he.Ga, b8);
  return v;
}

Verdict not_mirror() {
  Verdict v;
  const double fwd = triton_excitation_sum(kK1, base_calibration());
  v.check(std::fabs(fwd - 8.48) <= 0.01, fmt("triton sum %.4f", fwd));
  const double k1 = calibrate_k1(8.481).k1;
  v.check(std::fabs(k1 - 0.2125) <= 1e-3, fmt("k1 %.5f", k1));
  const int want[] = {6, 10, 14, 17, 20, 23, 26, 29};
  std::string chains;
  for (int p = 1; p <= 8; ++p) {
    const auto a = chain_length(p, kK1);
    chains += (p > 1 ? "," : "") + (a ? std::to_string(*a) : std::string("inf"));
    v.check(a && *a == want[p - 1], "chain p=" + std::to_string(p));
  }
  ShellConfiguration h4;
  h4.Z = 1;
  h4.A = 4;
  h4.occupancy = {{ShellState{0, 1}, 4, 1}};
  const double sub = required_subtraction(h4, 5.58).per_nucleon;
  v.check(std::fabs(sub - 0.984) <= 0.01, fmt("4H subtraction %.4f", sub));
  const auto t = level_table(make_field(1, 4, base_calibration()), 4, 4, 2, sub);
  const std::pair<const char*, double> ex[] = {
      {"1(0,1>1,0)", 0.389}, {"2(0,1>1,0) + 1(0,1>2av)", 2.029}, {"1(0,1>1,0) + 2(0,1>2av)", 2.891}};
  std::string got;
  for (const auto& [tr, w] : ex) {
    const double e = move_energy(t, parse_transition(tr), "nucleon");
    got += fmt(" %.3f", e);
    v.check(std::fabs(e - w) <= 0.02, std::string(tr) + fmt(" = %.3f", e));
  }
  if (v.pass)
    v.detail = fmt("triton %.4f, k1 %.5f, 4H subtraction %.4f", fwd, k1, sub) + ", chains " + chains + ", 4H lines" + got;
  return v;
}

Verdict round_trips() {
  Verdict v;
  const auto fit = calibrate_nuclei(2.224, 28.284);
  const double eg = std::fabs(fit.G / 302.316 - 1), ek = std::fabs(fit.k / 0.3908 - 1), ed = std::fabs(fit.d / 0.4317 - 1);
  v.check(fit.converged && eg <= 1e-3 && ek <= 1e-3 && ed <= 1e-3,
          fmt("nuclei (%.3f, %.5f, %.5f)", fit.G, fit.k, fit.d));
  double worst = 0;
  for (const char* sys : {"heII", "hydrogen"}) {
    const auto a = calibrate_atomic(sys, synthesize_atomic(sys, 0.04, 0.17));
    worst = std::max({worst, std::fabs(a.d - 0.04), std::fabs(a.g - 0.17)});
  }
  v.check(worst <= 1e-9, fmt("atomic round trip off by %.1e", worst));
  if (v.pass)
    v.detail = fmt("nuclei (%.3f, %.5f, %.5f)", fit.G, fit.k, fit.d) + fmt(", atomic round trip %.1e", worst);
  return v;
}

Verdict coherent() {
  Verdict v;
  double worst = 0, resid = 0;
  for (double k : {0.5, 1.0, 2.0})
    for (int count : {2, 3, 6}) {
      const auto r = solve_coherent_roots(k, count);
      const auto z = oracle::hermite_zeros(count);
      if (z.size() != r.roots.size()) {
        v.check(false, "oracle root count");
        continue;
      }
      for (size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::fabs(r.roots[i] - std::sqrt(2 * k) * z[i]));
      for (double x : coherent_residuals(k, r.roots)) resid = std::max(resid, std::fabs(x));
    }
  v.check(worst <= 1e-10, fmt("root error %.1e", worst));
  v.check(resid <= 1e-10, fmt("residual %.1e", resid));
  if (v.pass) v.detail = fmt("max root error %.1e, max residual %.1e", worst, resid);
  return v;
}

Verdict gluonic() {
  Verdict v;
  double ident = 0;
  for (int N : {0, 1, 3}) {
    const auto g = solve_gluonic_system(1.0, 1.2, 0.9, N, 1);
    ident = std::max(ident, gluonic_identities(g).max_abs());
    if (N == 3) {
      // recompute the summed identity from the roots alone
      double s1 = 0, s2 = 0;
      for (double R : g.roots) {
        s1 += 1 / R;
        s2 += 1 / (R * R);
      }
      v.check(std::fabs(g.A * s2 + (g.B + 1) * s1) <= 1e-9, "summed identity");
    }
  }
  v.check(ident <= 1e-9, fmt("identities %.1e", ident));
  const auto one = solve_gluonic_system(1.0, 1.2, 0.9, 1, 1);
  const double r1 = std::fabs(one.roots.at(0) + one.A / (one.B + 1));
  v.check(r1 <= 1e-12, fmt("N=1 root off by %.1e", r1));
  double worst = 0;
  for (double B : {-2.2, -3.0}) {
    for (double A : {0.7, 2.0}) {
      const double z = -2 * B - 3;
      auto w = [&](double x, int p) { return std::pow(x, z - 1 + p) * std::exp(-2 * A * x); };
      const double top = (z + 60) / A;
      const double quad = oracle::simpson([&](double x) { return w(x, 1); }, 0, top) /
                          oracle::simpson([&](double x) { return w(x, 0); }, 0, top);
      worst = std::max(worst, std::fabs(inverse_radius_moment(B, A, 1) / quad - 1));
    }
  }
  v.check(worst <= 1e-8, fmt("moment rel error %.1e", worst));
  if (v.pass) v.detail = fmt("identities %.1e, N=1 root %.1e, moment rel error %.1e", ident, r1, worst);
  return v;
}

Verdict waves() {
  Verdict v;
  double eq = 0;
  for (double a : {0.0, 1.0})
    for (double end : {3.0, -3.0})
      for (const auto& s : integrate_wave_pair({0, a, 0, a, 0}, end, 1e-3).points)
        eq = std::max({eq, std::fabs(s.p - a), std::fabs(s.v - a)});
  double ex = 0;
  for (double sg : {1.0, -1.0})
    for (const auto& s : integrate_wave_pair({0, 1, sg, 1, sg}, sg * 3, 1e-3).points)
      ex = std::max(ex, std::fabs(s.p / std::exp(sg * s.x) - 1));
  v.check(eq <= 1e-8 && ex <= 1e-8, fmt("exact solutions %.1e / %.1e", eq, ex));

  const WaveState start{0, 0.5, 0.3, 0.5, 0.3};
  auto drift = [&](double h) {
    double d = 0;
    const double c0 = wave_first_integral(start);
    for (double end : {5.0, -5.0})
      for (const auto& s : integrate_wave_pair(start, end, h).points) d = std::max(d, std::fabs(wave_first_integral(s) - c0));
    return d;
  };
  const double d3 = drift(1e-3);
  v.check(d3 <= 1e-8, fmt("drift %.1e", d3));
  const double a = drift(1e-2), b = drift(5e-3), c = drift(2.5e-3);
  const double o1 = std::log2(a / b), o2 = std::log2(b / c);
  v.check(std::fabs(o1 - 4) <= 0.6 && std::fabs(o2 - 4) <= 0.6, fmt("observed orders %.2f, %.2f", o1, o2));
  const auto tp = turning_points(-std::exp(-1.0));
  v.check(std::fabs(tp.p_minus - 1) <= 1e-6 && std::fabs(tp.p_plus - 1) <= 1e-6, "turning points at -1/e");
  if (v.pass) v.detail = fmt("exact %.1e, drift %.1e", std::max(eq, ex), d3) + fmt(", orders %.2f/%.2f", o1, o2);
  return v;
}

Verdict coherence() {
  Verdict v;
  const auto w = coherence_residual("coulomb_w_vacuum", {{"u0", -1}});
  v.check(w.values.at("s0") == -2.0 && w.values.at("q") == -1.0, "coulomb_w_vacuum");
  double worst = 0;
  for (double b : {0.5, 1.0, 2.0}) {
    const double a = coherence_residual("log_state", {{"b", b}}).values.at("a_solution");
    // the weighted integral must vanish; compactified Simpson quadrature
    auto f = [&](double t) {
      if (t >= 1) return 0.0;
      const double x = t / (1 - t);
      return (a - std::log(b + x)) / std::pow(b + x, 3) / ((1 - t) * (1 - t));
    };
    worst = std::max({worst, std::fabs(oracle::simpson(f, 0, 1)), std::fabs(a - std::log(b) - 0.5)});
  }
  v.check(worst <= 1e-8, fmt("log case %.1e", worst));
  if (v.pass) v.detail = fmt("(s0, q) = (%g, %g), log case %.1e", w.values.at("s0"), w.values.at("q"), worst);
  return v;
}

Verdict fluid() {
  Verdict v;
  const double c = 1.7;
  v.check(ideal_stream_velocity(2.0, 0, c) == 0.0, "v(0)");
  const double edge = ideal_stream_velocity(2.0, 0.5, c);
  v.check(std::fabs(edge - c / std::numbers::sqrt2) <= 4 * std::numeric_limits<double>::epsilon(), fmt("v(kx=1) %.17g", edge));
  bool rejected = false;
  try {
    rotational_velocity(0.3, 0.25, 1.0, FlowBranch::subsonic);
  } catch (const DomainError&) {
    rejected = true;
  }
  v.check(rejected, "|r| > 1/2 accepted");
  const double top = rotational_velocity(0.25, 0.25, 1.0, FlowBranch::subsonic);
  v.check(std::fabs(top - 1 / std::numbers::sqrt2) <= 1e-10, fmt("v(r=1/2) %.12f", top));
  if (v.pass) v.detail = "v(0)=0, v(kx=1)=c/sqrt2, r=1/2 gives 1/sqrt2, |r|>1/2 rejected";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"He II spectrum", he2},
      {"hydrogen spectrum", hydrogen},
      {"Li I spectrum", lithium},
      {"nuclei base calibration", nuclei_base},
      {"nuclei spin-orbit calibration", nuclei_so},
      {"not-mirror nuclei", not_mirror},
      {"calibration round trips", round_trips},
      {"coherent roots", coherent},
      {"gluonic system", gluonic},
      {"nonlinear waves", waves},
      {"coherence cases", coherence},
      {"fluid profiles", fluid},
  };
  const auto t0 = std::chrono::steady_clock::now();
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("%s [%02d] %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed ? 1 : 0;
}
