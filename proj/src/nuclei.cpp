#include "nonfield/nuclei.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "nonfield/errors.hpp"

namespace nf {

Calibration base_calibration() {
  Calibration c;
  c.tag = "base";
  c.G = 302.316;
  c.k = 0.3908;
  c.d = 0.4317;
  c.so = false;
  return c;
}

// d follows the stated condition (neutron pionic energy in the (0,1) minus
// state of the A=2 field); the printed 0.468 does not reproduce the SO tables.
Calibration so_calibration() {
  Calibration c;
  c.tag = "so";
  c.G = 296.511;
  c.k = 0.3997;
  c.d = 0.437533;
  c.so = true;
  return c;
}

Calibration calibration_by_tag(const std::string& tag) {
  if (tag == "base") return base_calibration();
  if (tag == "so") return so_calibration();
  throw InvalidArgument("calibration must be 'base' or 'so', got '" + tag + "'");
}

void PionicField::validate() const {
  if (A < 2) throw InvalidArgument("A must be at least 2");
  if (Z < 0 || Z > A) throw InvalidArgument("Z must lie in [0, A]");
  if (!(G > 0)) throw InvalidArgument("G must be positive");
  if (!(Ga >= 0)) throw InvalidArgument("Ga must be non-negative");
  if (coulomb && 1 - coulomb_c * (Z - 1) * Ga < 0) throw DomainError("Coulomb radicand is negative");
}

double suppression_factor(int p, int n, double k1) {
  if (p < 1) throw InvalidArgument("proton number must be at least 1");
  return 1.0 - k1 * std::abs(n - p) / std::sqrt(static_cast<double>(p));
}

double pionic_charge(int Z, int A, double k, double k1, bool mirror) {
  if (A < 1 || Z < 0 || Z > A) throw InvalidArgument("invalid nuclide");
  if (A == 1) return 0.0;
  const double am1 = A - 1;
  const double base = std::pow(am1, 2.0 / 3.0);
  if (mirror) return k * am1 / A * base;
  const int n = A - Z;
  if (Z == 0 || n == 0) throw InvalidArgument("not-mirror charge needs both protons and neutrons");
  const double S = suppression_factor(Z, n, k1);
  if (S <= 0) throw DomainError("isotope chain interrupted: suppression factor S <= 0");
  return k * am1 / (2 * std::sqrt(static_cast<double>(Z) * n)) * base * std::pow(S, 2.0 / 3.0);
}

PionicField make_field(int Z, int A, const Calibration& cal, bool coulomb) {
  if (A < 2) throw InvalidArgument("A must be at least 2");
  if (Z < 1 || Z >= A) throw InvalidArgument("nuclide needs at least one proton and one neutron");
  PionicField f;
  f.Z = Z;
  f.A = A;
  f.G = cal.G;
  f.d_gluon = cal.d;
  f.coulomb_c = cal.coulomb_c;
  f.so_enabled = cal.so;
  f.coulomb = coulomb;
  f.calibration_tag = cal.tag;
  const bool mirror = (A == 2 * Z);
  f.Ga = pionic_charge(Z, A, cal.k, cal.k1, mirror);
  f.validate();
  return f;
}

PionicField make_field(int Z, int A, const Calibration& cal) { return make_field(Z, A, cal, A == 2 * Z); }

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::none: return "none";
    case Sign::plus: return "plus";
    case Sign::minus: return "minus";
  }
  return "none";
}

Sign parse_sign(const std::string& s) {
  if (s == "none" || s.empty()) return Sign::none;
  if (s == "plus" || s == "+") return Sign::plus;
  if (s == "minus" || s == "-") return Sign::minus;
  throw ParseError("sign must be plus, minus or none, got '" + s + "'");
}

std::string ShellState::base_label() const {
  if (averaged()) return std::to_string(avg_shell) + "av";
  return std::to_string(N) + "," + std::to_string(l);
}

std::string ShellState::label() const {
  std::string b = base_label();
  if (sign == Sign::plus) b += "+";
  if (sign == Sign::minus) b += "-";
  return b;
}

ShellState ShellState::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
  if (t.size() > 2 && t.substr(t.size() - 2) == "av") {
    const std::string num = t.substr(0, t.size() - 2);
    if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit)) throw ParseError("bad shell average '" + text + "'");
    return average(std::stoi(num));
  }
  ShellState s;
  if (!t.empty() && (t.back() == '+' || t.back() == '-')) {
    s.sign = t.back() == '+' ? Sign::plus : Sign::minus;
    t.pop_back();
  }
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw ParseError("shell state must look like 'N,l', got '" + text + "'");
  const std::string a = t.substr(0, comma), b = t.substr(comma + 1);
  auto digits = [](const std::string& x) { return !x.empty() && std::all_of(x.begin(), x.end(), ::isdigit); };
  if (!digits(a) || !digits(b)) throw ParseError("shell state must look like 'N,l', got '" + text + "'");
  s.N = std::stoi(a);
  s.l = std::stoi(b);
  if (s.sign == Sign::minus && s.l == 0) throw InvalidArgument("minus state requires l >= 1");
  return s;
}

Sign effective_sign(const PionicField& f, const ShellState& st) {
  if (!f.so_enabled || st.l == 0) return Sign::none;
  return st.sign == Sign::minus ? Sign::minus : Sign::plus;
}

SpinOrbit spin_orbit_term(int two_j, int l, double Ga) {
  if (two_j < 1 || two_j % 2 == 0) throw InvalidArgument("two_j must be a positive odd integer");
  const double jh = (two_j + 1) / 2.0;  // j + 1/2
  const double bracket = jh - std::sqrt(jh * jh + Ga * Ga);
  SpinOrbit so;
  so.s_plus = -bracket;
  so.s_minus = bracket;
  const double base = (l + 0.5) * (l + 0.5) + 2 * Ga * Ga;
  if (base + so.s_plus < 0 || base + so.s_minus < 0) throw DomainError("negative radicand in the spin-orbit exponent");
  so.B_plus = -0.5 + std::sqrt(base + so.s_plus);
  so.B_minus = -0.5 + std::sqrt(base + so.s_minus);
  return so;
}

double pionic_energy(const PionicField& f, const ShellState& st, bool is_proton) {
  if (st.averaged()) throw InvalidArgument("pionic_energy needs an individual shell state");
  if (st.N < 0 || st.l < 0) throw InvalidArgument("N and l must be non-negative");
  const double Ga = f.Ga;
  double s = 0;
  if (f.so_enabled) {
    const Sign sg = st.l == 0 ? Sign::plus : effective_sign(f, st);
    const int two_j = sg == Sign::minus ? 2 * st.l - 1 : 2 * st.l + 1;
    const SpinOrbit so = spin_orbit_term(two_j, st.l, Ga);
    s = sg == Sign::minus ? so.s_minus : so.s_plus;
    if (is_proton) s = -s;
  }
  const double rad = (st.l + 0.5) * (st.l + 0.5) + 2 * Ga * Ga + s;
  if (rad < 0) throw DomainError("negative radicand in the pionic exponent");
  const double D = -0.5 + std::sqrt(rad);
  double K = 0;
  if (is_proton && f.coulomb && f.Z > 1) {
    const double r = 1 - f.coulomb_c * (f.Z - 1) * Ga;
    if (r < 0) throw DomainError("negative radicand in the Coulomb correction");
    K = 0.5 * (1 - std::sqrt(r));
  }
  const double n_ef = D + st.N + 1 + K;
  const double m_ef = std::sqrt(kNucleonMass * kNucleonMass + f.G * f.G);
  const double q = f.G * Ga / (m_ef * n_ef);
  if (q * q > 1) throw DomainError("pionic coupling exceeds the effective mass");
  return m_ef * q * q / (1 + std::sqrt(1 - q * q));
}

double subtraction_per_nucleon(const PionicField& f) { return 2 * f.d_gluon * (f.A - 1) / static_cast<double>(f.A); }

double nucleon_energy(const PionicField& f, const ShellState& st, bool is_proton) {
  return pionic_energy(f, st, is_proton) - subtraction_per_nucleon(f);
}

double pair_energy(const PionicField& f, const ShellState& st) {
  return pionic_energy(f, st, true) + pionic_energy(f, st, false) - 2 * subtraction_per_nucleon(f);
}

namespace {

ShellState normalize(const PionicField& f, ShellState st) {
  if (st.averaged()) return st;
  st.sign = effective_sign(f, st);
  if (st.sign == Sign::plus && (st.l == 0 || !f.so_enabled)) st.sign = Sign::none;
  return st;
}

}  // namespace

const LevelRow* LevelTable::find(const ShellState& st) const {
  const ShellState key = normalize(field, st);
  for (const auto& r : rows)
    if (r.state == key) return &r;
  return nullptr;
}

const ShellAverage* LevelTable::find_average(int shell) const {
  for (const auto& a : averages)
    if (a.shell == shell) return &a;
  return nullptr;
}

double LevelTable::pionic(const ShellState& st, bool is_proton) const {
  if (st.averaged()) {
    const ShellAverage* a = find_average(st.avg_shell);
    if (!a) throw NotFound("no open members to average in shell " + std::to_string(st.avg_shell));
    return is_proton ? a->pionic_proton : a->pionic_neutron;
  }
  const LevelRow* r = find(st);
  if (!r) throw NotFound("state " + st.label() + " is outside the level table");
  return is_proton ? r->pionic_proton : r->pionic_neutron;
}

bool LevelTable::is_open(const ShellState& st) const {
  if (st.averaged()) return find_average(st.avg_shell) != nullptr;
  const LevelRow* r = find(st);
  return r && r->open;
}

std::vector<ShellState> LevelTable::targets(bool open_only) const {
  std::vector<ShellState> out;
  for (const auto& r : rows) {
    if (r.in_average) continue;
    if (open_only && !r.open) continue;
    out.push_back(r.state);
  }
  for (const auto& a : averages) out.push_back(ShellState::average(a.shell));
  return out;
}

LevelTable level_table(const PionicField& f, int maxN, int maxL, int average_from_shell,
                       std::optional<double> subtraction) {
  f.validate();
  if (maxN < 0 || maxL < 0 || maxN > 12 || maxL > 12) throw InvalidArgument("maxN and maxL must lie in [0, 12]");
  LevelTable t;
  t.field = f;
  t.average_from_shell = average_from_shell;
  t.subtraction = subtraction ? *subtraction : subtraction_per_nucleon(f);
  if (t.subtraction < 0) throw InvalidArgument("subtraction must be non-negative");

  auto make_row = [&](ShellState st) {
    LevelRow r;
    r.state = st;
    r.pionic_proton = pionic_energy(f, st, true);
    r.pionic_neutron = pionic_energy(f, st, false);
    r.proton = r.pionic_proton - t.subtraction;
    r.neutron = r.pionic_neutron - t.subtraction;
    r.pair = r.proton + r.neutron;
    r.open = 0.5 * (r.pionic_proton + r.pionic_neutron) > t.subtraction;
    return r;
  };
  for (int N = 0; N <= maxN; ++N)
    for (int l = 0; l <= maxL; ++l) {
      if (f.so_enabled && l >= 1) {
        t.rows.push_back(make_row(ShellState{N, l, Sign::plus}));
        t.rows.push_back(make_row(ShellState{N, l, Sign::minus}));
      } else {
        t.rows.push_back(make_row(ShellState{N, l, Sign::none}));
      }
    }

  // only complete shells are averaged
  const int last_shell = std::min(maxN, maxL);
  for (int shell = std::max(0, average_from_shell); shell <= last_shell; ++shell) {
    ShellAverage avg;
    avg.shell = shell;
    std::vector<double> pairs, pp, pn;
    for (int N = 0; N <= shell; ++N) {
      const int l = shell - N;
      double sp = 0, spp = 0, spn = 0;
      int cnt = 0;
      for (const auto& r : t.rows)
        if (r.state.N == N && r.state.l == l) {
          sp += r.pair;
          spp += r.pionic_proton;
          spn += r.pionic_neutron;
          ++cnt;
        }
      if (cnt == 0) continue;
      sp /= cnt;
      spp /= cnt;
      spn /= cnt;
      if (!(0.5 * (spp + spn) > t.subtraction)) continue;
      avg.members.emplace_back(N, l);
      pairs.push_back(sp);
      pp.push_back(spp);
      pn.push_back(spn);
    }
    if (avg.members.empty()) continue;
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / v.size();
    };
    avg.pair = mean(pairs);
    avg.pionic_proton = mean(pp);
    avg.pionic_neutron = mean(pn);
    avg.range_lo = *std::min_element(pairs.begin(), pairs.end()) - avg.pair;
    avg.range_hi = *std::max_element(pairs.begin(), pairs.end()) - avg.pair;
    for (auto& r : t.rows)
      for (const auto& [N, l] : avg.members)
        if (r.state.N == N && r.state.l == l) r.in_average = true;
    t.averages.push_back(std::move(avg));
  }

  std::stable_sort(t.rows.begin(), t.rows.end(), [](const LevelRow& a, const LevelRow& b) { return a.pair > b.pair; });
  return t;
}

namespace {

int per_type_capacity(const PionicField& f, const ShellState& st) {
  const Sign s = effective_sign(f, st);
  if (s == Sign::none) return st.l == 0 ? 2 : 2 * (2 * st.l + 1);
  return s == Sign::plus ? 2 * st.l + 2 : 2 * st.l;
}

}  // namespace

PionicField ShellConfiguration::field() const {
  const Calibration cal = calibration_by_tag(calibration);
  const int zf = field_override ? field_override->first : Z;
  const int af = field_override ? field_override->second : A;
  return make_field(zf, af, cal, af == 2 * zf);
}

void ShellConfiguration::validate() const {
  if (A < 2 || Z < 1 || Z >= A) throw InvalidArgument("configuration needs 1 <= Z < A and A >= 2");
  calibration_by_tag(calibration);
  if (occupancy.empty()) throw InvariantViolation("configuration has no occupied states");
  const PionicField f = field();
  int total = 0, protons = 0;
  std::set<ShellState> seen;
  for (const auto& o : occupancy) {
    if (o.state.averaged()) throw InvalidArgument("occupancy cannot use averaged states");
    if (o.state.N < 0 || o.state.l < 0) throw InvalidArgument("N and l must be non-negative");
    if (o.state.sign == Sign::minus && o.state.l == 0) throw InvalidArgument("minus state requires l >= 1");
    if (o.count < 0 || o.protons < 0) throw InvariantViolation("counts must be non-negative");
    if (o.protons > o.count) throw InvariantViolation("proton count exceeds occupancy in " + o.state.label());
    const ShellState key = normalize(f, o.state);
    if (!seen.insert(key).second) throw InvariantViolation("state " + key.label() + " listed twice");
    const int cap = per_type_capacity(f, o.state);
    if (o.protons > cap || o.count - o.protons > cap)
      throw InvariantViolation("state " + o.state.label() + " holds at most " + std::to_string(cap) + " nucleons of each kind");
    total += o.count;
    protons += o.protons;
  }
  if (total != A) throw InvariantViolation("occupancy sums to " + std::to_string(total) + ", expected A=" + std::to_string(A));
  if (protons != Z) throw InvariantViolation("proton counts sum to " + std::to_string(protons) + ", expected Z=" + std::to_string(Z));
}

ConfigurationEnergy configuration_energy(const ShellConfiguration& c) {
  c.validate();
  const PionicField f = c.field();
  ConfigurationEnergy e;
  for (const auto& o : c.occupancy) {
    if (o.count == 0) continue;
    e.pionic_total += o.protons * pionic_energy(f, o.state, true) + (o.count - o.protons) * pionic_energy(f, o.state, false);
  }
  e.subtraction_total = subtraction_per_nucleon(f) * c.A;
  e.binding_with_subtraction = e.pionic_total - e.subtraction_total;
  return e;
}

RequiredSubtraction required_subtraction(const ShellConfiguration& c, double observed_binding) {
  if (observed_binding < 0) throw InvalidArgument("observed binding must be non-negative");
  const ConfigurationEnergy e = configuration_energy(c);
  RequiredSubtraction r;
  r.per_nucleon = (e.pionic_total - observed_binding) / c.A;
  r.underbinds = r.per_nucleon < 0;
  return r;
}

StatePartition open_states(const LevelTable& t, double subtraction) {
  if (subtraction < 0) throw InvalidArgument("subtraction must be non-negative");
  StatePartition p;
  for (const auto& r : t.rows) {
    if (0.5 * (r.pionic_proton + r.pionic_neutron) > subtraction)
      p.open.push_back(r.state);
    else
      p.resonance.push_back(r.state);
  }
  return p;
}

std::string Transition::label() const {
  std::ostringstream os;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (i) os << "+";
    os << moves[i].count << "(" << moves[i].from.label() << ">" << moves[i].to.label() << ")";
  }
  return os.str();
}

Parity parse_parity(const std::string& s) {
  if (s == "any") return Parity::any;
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw ParseError("parity must be even, odd or any, got '" + s + "'");
}

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::any: return "any";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
  }
  return "any";
}

namespace {

bool parity_ok(Parity p, int n) {
  if (p == Parity::even) return n % 2 == 0;
  if (p == Parity::odd) return n % 2 == 1;
  return true;
}

bool label_matches(const std::string& pattern, const ShellState& st) {
  if (pattern == st.label()) return true;
  // an unsigned pattern matches both spin-orbit branches
  return pattern == st.base_label();
}

struct MoveSource {
  ShellState state;
  int units = 0;
  int protons = 0;
  int neutrons = 0;
  Parity parity = Parity::any;
};

struct UnitMove {
  ShellState to;
  int units;
};

}  // namespace

std::vector<Transition> enumerate_excitations(const ShellConfiguration& c, const ExcitationRules& rules,
                                              const LevelTable& table, double max_energy) {
  c.validate();
  if (rules.unit != "pair" && rules.unit != "nucleon") throw InvalidArgument("rule unit must be 'pair' or 'nucleon'");
  if (rules.max_moved < 0 || rules.min_moved < 0) throw InvalidArgument("move bounds must be non-negative");
  const bool pairs = rules.unit == "pair";
  const PionicField& f = table.field;

  std::vector<MoveSource> sources;
  for (const auto& o : c.occupancy) {
    if (o.count == 0) continue;
    MoveSource s;
    s.state = o.state;
    s.protons = o.protons;
    s.neutrons = o.count - o.protons;
    s.units = pairs ? std::min(s.protons, s.neutrons) : s.neutrons + (rules.spectator_protons ? 0 : s.protons);
    for (const auto& [k, v] : rules.per_state_caps)
      if (label_matches(k, o.state)) s.units = std::min(s.units, v);
    for (const auto& [k, v] : rules.per_state_parity)
      if (label_matches(k, o.state)) s.parity = v;
    if (s.units > 0) sources.push_back(s);
  }

  std::vector<ShellState> targets = table.targets(rules.targets_open_only);

  // energy of moving one unit from a source to a target, given how many
  // units of that source have already been moved (proton order for nucleons)
  auto unit_delta = [&](const MoveSource& s, const ShellState& to, int already) {
    const ShellState from = s.state;
    const double dp = table.pionic(from, true) - table.pionic(to, true);
    const double dn = table.pionic(from, false) - table.pionic(to, false);
    if (pairs) return dp + dn;
    return already < s.neutrons ? dn : dp;
  };

  auto allowed_target = [&](const MoveSource& s, const ShellState& to) {
    const ShellState from = normalize(f, s.state);
    if (!to.averaged() && normalize(f, to) == from) return false;
    if (rules.flip_suppressed && !to.averaged()) {
      const Sign a = effective_sign(f, s.state), b = effective_sign(f, to);
      if (s.state.l > 0 && to.l > 0 && a != Sign::none && b != Sign::none && a != b) return false;
    }
    for (const auto& [fp, tp] : rules.forbidden_pairs)
      if (label_matches(fp, s.state) && label_matches(tp, to)) return false;
    return true;
  };

  // per-source target lists with positive per-unit energy
  std::vector<std::vector<ShellState>> options(sources.size());
  for (size_t i = 0; i < sources.size(); ++i)
    for (const auto& to : targets) {
      if (!allowed_target(sources[i], to)) continue;
      if (unit_delta(sources[i], to, 0) <= 0) continue;
      if (!pairs && sources[i].neutrons > 0 && sources[i].protons > 0 && unit_delta(sources[i], to, sources[i].neutrons) <= 0)
        continue;
      options[i].push_back(to);
    }

  std::vector<Transition> out;
  std::vector<std::vector<UnitMove>> chosen(sources.size());

  std::function<void(size_t, int, double)> recurse;
  auto emit = [&](int moved, double energy) {
    if (moved < std::max(1, rules.min_moved) || !parity_ok(rules.parity, moved)) return;
    if (!(energy > 0) || energy > max_energy + 1e-12) return;
    Transition tr;
    tr.energy = energy;
    for (size_t i = 0; i < sources.size(); ++i) {
      int used = 0;
      for (const auto& um : chosen[i]) {
        Move m;
        m.from = sources[i].state;
        m.to = um.to;
        if (pairs) {
          m.count = 2 * um.units;
          m.protons = um.units;
        } else {
          const int nn = std::max(0, std::min(um.units, sources[i].neutrons - used));
          m.count = um.units;
          m.protons = um.units - nn;
        }
        used += um.units;
        tr.moves.push_back(m);
      }
    }
    out.push_back(std::move(tr));
  };

  // distribute units of source i over its targets starting at option index `from`
  std::function<void(size_t, size_t, int, int, int, double)> distribute;
  distribute = [&](size_t i, size_t from_opt, int used_here, int moved, int budget, double energy) {
    if (energy > max_energy + 1e-12) return;
    // close this source
    if (used_here == 0 || parity_ok(sources[i].parity, used_here)) recurse(i + 1, moved, energy);
    if (used_here > 0 && !rules.split_sources) return;
    for (size_t t = from_opt; t < options[i].size(); ++t) {
      const int room = std::min(sources[i].units - used_here, budget - moved);
      for (int k = 1; k <= room; ++k) {
        double e = energy;
        for (int u = 0; u < k; ++u) e += unit_delta(sources[i], options[i][t], used_here + u);
        chosen[i].push_back({options[i][t], k});
        distribute(i, t + 1, used_here + k, moved + k, budget, e);
        chosen[i].pop_back();
      }
    }
  };

  recurse = [&](size_t i, int moved, double energy) {
    if (i == sources.size()) {
      emit(moved, energy);
      return;
    }
    distribute(i, 0, 0, moved, rules.max_moved, energy);
  };
  recurse(0, 0, 0.0);

  std::stable_sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.label() < b.label();
  });
  return out;
}

std::vector<TransitionMatch> match_lines(const std::vector<Transition>& transitions, const std::vector<double>& observed,
                                         double tol) {
  if (!(tol >= 0)) throw InvalidArgument("matching tolerance must be non-negative");
  struct Cand {
    double dev;
    size_t t, o;
  };
  std::vector<Cand> cands;
  for (size_t t = 0; t < transitions.size(); ++t)
    for (size_t o = 0; o < observed.size(); ++o) {
      const double dev = transitions[t].energy - observed[o];
      if (std::fabs(dev) <= tol) cands.push_back({dev, t, o});
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return std::fabs(a.dev) < std::fabs(b.dev); });
  std::vector<bool> used_t(transitions.size()), used_o(observed.size());
  std::vector<TransitionMatch> out;
  for (const auto& c : cands) {
    if (used_t[c.t] || used_o[c.o]) continue;
    used_t[c.t] = used_o[c.o] = true;
    out.push_back({transitions[c.t], observed[c.o], c.dev});
  }
  std::stable_sort(out.begin(), out.end(), [](const TransitionMatch& a, const TransitionMatch& b) { return a.observed < b.observed; });
  return out;
}

Transition parse_transition(const std::string& text) {
  static const std::regex piece(R"((\d+)\s*\(([^>()]+)>([^>()]+)\))");
  Transition tr;
  size_t last = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), piece); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::string gap = text.substr(last, m.position() - last);
    if (gap.find_first_not_of(" +") != std::string::npos) throw ParseError("unexpected text '" + gap + "' in transition '" + text + "'");
    last = m.position() + m.length();
    Move mv;
    mv.count = std::stoi(m[1]);
    mv.from = ShellState::parse(m[2]);
    mv.to = ShellState::parse(m[3]);
    mv.protons = -1;
    if (mv.count < 1) throw ParseError("move counts must be positive in '" + text + "'");
    tr.moves.push_back(mv);
  }
  if (tr.moves.empty() || text.substr(last).find_first_not_of(" +") != std::string::npos)
    throw ParseError("transition must look like '4(0,0>0,2) + 2(1,0>3av)', got '" + text + "'");
  return tr;
}

double move_energy(const LevelTable& t, const Transition& tr, const std::string& unit) {
  if (unit != "pair" && unit != "nucleon") throw InvalidArgument("unit must be 'pair' or 'nucleon'");
  double e = 0;
  for (const auto& m : tr.moves) {
    const double dp = t.pionic(m.from, true) - t.pionic(m.to, true);
    const double dn = t.pionic(m.from, false) - t.pionic(m.to, false);
    if (unit == "pair") {
      if (m.count % 2) throw InvalidArgument("pair moves need an even nucleon count");
      e += m.count / 2 * (dp + dn);
    } else if (m.protons < 0) {
      e += m.count * 0.5 * (dp + dn);
    } else {
      e += m.protons * dp + (m.count - m.protons) * dn;
    }
  }
  return e;
}

std::optional<int> chain_length(int p, double k1) {
  if (p < 1) throw InvalidArgument("proton number must be at least 1");
  if (k1 < 0) throw InvalidArgument("k1 must be non-negative");
  if (k1 == 0) return std::nullopt;
  const double t = std::sqrt(static_cast<double>(p)) / k1;
  long n = static_cast<long>(std::floor(p + t));
  if (n - p >= t) --n;
  return static_cast<int>(p + n);
}

double triton_excitation_sum(double k1, const Calibration& cal) {
  Calibration c = cal;
  c.k1 = k1;
  c.so = false;
  const PionicField f = make_field(1, 3, c, false);
  return 3 * (pionic_energy(f, ShellState{0, 0}, false) - pionic_energy(f, ShellState{0, 1}, false));
}

}  // namespace nf
