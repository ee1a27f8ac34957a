#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nf {

inline constexpr double kNucleonMass = 938.0;  // MeV
inline constexpr double kCoulombC = 0.0035;
inline constexpr double kK1 = 0.2125;

struct Calibration {
  std::string tag;
  double G = 0;  // MeV
  double k = 0;
  double d = 0;  // MeV
  bool so = false;
  double coulomb_c = kCoulombC;
  double k1 = kK1;
};

Calibration base_calibration();
Calibration so_calibration();
Calibration calibration_by_tag(const std::string& tag);

struct PionicField {
  int Z = 0;
  int A = 0;
  double G = 0;
  double Ga = 0;
  double d_gluon = 0;
  double coulomb_c = kCoulombC;
  bool so_enabled = false;
  bool coulomb = true;
  std::string calibration_tag;

  int n_neutrons() const { return A - Z; }
  void validate() const;
};

double pionic_charge(int Z, int A, double k, double k1, bool mirror);
double suppression_factor(int p, int n, double k1);

// Mirror nuclei (n == p) use the mirror charge and keep the Coulomb term;
// everything else uses the suppressed charge with the Coulomb term off.
PionicField make_field(int Z, int A, const Calibration& cal);
PionicField make_field(int Z, int A, const Calibration& cal, bool coulomb);

enum class Sign { none, plus, minus };
const char* sign_name(Sign s);
Sign parse_sign(const std::string& s);

struct ShellState {
  int N = 0;
  int l = 0;
  Sign sign = Sign::none;
  int avg_shell = -1;  // >= 0 marks a shell average "Nav"

  bool averaged() const { return avg_shell >= 0; }
  std::string base_label() const;  // "0,1" or "3av"
  std::string label() const;       // "0,1+" / "0,1-" / "0,1" / "3av"
  static ShellState parse(const std::string& text);
  static ShellState average(int shell) { return ShellState{0, 0, Sign::none, shell}; }

  auto operator<=>(const ShellState&) const = default;
};

// The two roots s+ = -s- for one j, and the shifted exponents they produce.
// Neutrons take s+ in j=l+1/2 states and s- in j=l-1/2 states; protons take
// the opposite sign.
struct SpinOrbit {
  double s_plus = 0;
  double s_minus = 0;
  double B_plus = 0;
  double B_minus = 0;
};

// Effective sign of a state under a field: l = 0 is always j = l+1/2, and an
// unsigned l >= 1 state is read as the plus branch when spin-orbit is on.
Sign effective_sign(const PionicField& f, const ShellState& st);

SpinOrbit spin_orbit_term(int two_j, int l, double Ga);

double pionic_energy(const PionicField& f, const ShellState& st, bool is_proton);
double subtraction_per_nucleon(const PionicField& f);
double nucleon_energy(const PionicField& f, const ShellState& st, bool is_proton);
double pair_energy(const PionicField& f, const ShellState& st);

struct LevelRow {
  ShellState state;
  double pionic_proton = 0;
  double pionic_neutron = 0;
  double proton = 0;
  double neutron = 0;
  double pair = 0;
  bool open = false;
  bool in_average = false;
};

struct ShellAverage {
  int shell = 0;
  std::vector<std::pair<int, int>> members;
  double pionic_proton = 0;
  double pionic_neutron = 0;
  double pair = 0;
  double range_lo = 0;
  double range_hi = 0;
};

struct LevelTable {
  PionicField field;
  double subtraction = 0;  // per nucleon
  int average_from_shell = 3;
  std::vector<LevelRow> rows;  // sorted by pair energy, descending
  std::vector<ShellAverage> averages;

  const LevelRow* find(const ShellState& st) const;
  const ShellAverage* find_average(int shell) const;
  // pionic per-nucleon energy for an individual or averaged state
  double pionic(const ShellState& st, bool is_proton) const;
  // states usable as transition targets (individual rows outside averages plus the averages)
  std::vector<ShellState> targets(bool open_only) const;
  bool is_open(const ShellState& st) const;
};

LevelTable level_table(const PionicField& f, int maxN, int maxL, int average_from_shell = 3,
                       std::optional<double> subtraction = std::nullopt);

struct Occupancy {
  ShellState state;
  int count = 0;
  int protons = 0;
};

struct ShellConfiguration {
  int Z = 0;
  int A = 0;
  std::string calibration = "base";
  std::optional<std::pair<int, int>> field_override;  // (z, a) of the field the nucleons move in
  std::vector<Occupancy> occupancy;

  void validate() const;
  PionicField field() const;
};

struct ConfigurationEnergy {
  double pionic_total = 0;
  double subtraction_total = 0;
  double binding_with_subtraction = 0;
};

ConfigurationEnergy configuration_energy(const ShellConfiguration& c);

struct RequiredSubtraction {
  double per_nucleon = 0;
  bool underbinds = false;  // negative: the configuration binds less than observed
};

RequiredSubtraction required_subtraction(const ShellConfiguration& c, double observed_binding);

struct StatePartition {
  std::vector<ShellState> open;
  std::vector<ShellState> resonance;
};

StatePartition open_states(const LevelTable& t, double subtraction);

struct Move {
  ShellState from;
  ShellState to;
  int count = 0;  // nucleons
  int protons = 0;  // -1: unspecified, the move uses the p/n mean
};

struct Transition {
  std::vector<Move> moves;
  double energy = 0;
  std::string label() const;
};

// "4(0,0>0,2) + 2(1,0>3av)"; counts are nucleons, signs go on the states ("0,1+")
Transition parse_transition(const std::string& text);
// energy released by the moves; "pair" moves count/2 pn-pairs, "nucleon" moves single nucleons
double move_energy(const LevelTable& t, const Transition& tr, const std::string& unit);

enum class Parity { any, even, odd };
Parity parse_parity(const std::string& s);
const char* parity_name(Parity p);

struct ExcitationRules {
  Parity parity = Parity::any;
  int min_moved = 1;
  int max_moved = 3;
  std::string unit = "pair";  // "pair" or "nucleon"
  std::vector<std::pair<std::string, std::string>> forbidden_pairs;
  bool flip_suppressed = true;
  double max_energy_mev = 40.0;
  bool targets_open_only = true;
  bool spectator_protons = false;
  int average_from_shell = 3;
  int max_n = 4;
  int max_l = 5;
  std::optional<double> subtraction_mev;
  std::map<std::string, int> per_state_caps;         // units
  std::map<std::string, Parity> per_state_parity;    // on units moved from that source
  bool split_sources = false;  // one source may feed several targets
};

std::vector<Transition> enumerate_excitations(const ShellConfiguration& c, const ExcitationRules& rules,
                                              const LevelTable& table, double max_energy);

struct TransitionMatch {
  Transition transition;
  double observed = 0;
  double deviation = 0;  // calculated - observed
};

std::vector<TransitionMatch> match_lines(const std::vector<Transition>& transitions,
                                         const std::vector<double>& observed, double tol);

// Largest A = p + n with n - p < sqrt(p)/k1; nullopt means no limit (k1 == 0).
std::optional<int> chain_length(int p, double k1);

// 3 * [eps(1,2,(0,0)) - eps(1,2,(0,1))], pionic energies in the p=1, n=2 field.
double triton_excitation_sum(double k1, const Calibration& cal);

}  // namespace nf
