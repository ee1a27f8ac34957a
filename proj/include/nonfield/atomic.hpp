#pragma once

#include <array>
#include <string>
#include <vector>

namespace nf {

inline constexpr double kAlpha = 7.297352568e-3;

struct AtomicModelParams {
  double alpha = kAlpha;
  double mass = 0.0;  // eV
  double Z = 0.0;
  double d = 0.0;
  double g = 0.0;
  double vacuum_offset = 0.0;  // eV, display only

  void validate() const;
};

AtomicModelParams he2_params();
AtomicModelParams hydrogen_params();

// Series tags follow the three columns of the printed tables.
enum class Series { N0_plus, N1_plus, N1_minus };

struct QuantumState {
  int N = 0;
  int l = 0;
  int two_j = 1;
  std::string label;

  int principal() const { return N + (two_j + 1) / 2; }
  bool plus() const { return two_j == 2 * l + 1; }
  Series series() const;
  void validate() const;

  static QuantumState make(int N, int l, int two_j);
  // "2p3/2" style: principal number, letter, 2j. N is implied by n, l and j.
  static QuantumState parse(const std::string& label);
};

char orbital_letter(int l);
int orbital_from_letter(char c);
std::string state_label(int n, int l, int two_j);
const char* series_name(Series s);

double b_coefficient(const AtomicModelParams& p, const QuantumState& s);
double effective_mass_factor(const AtomicModelParams& p, double n_ef);
double binding_energy(const AtomicModelParams& p, const QuantumState& s);
// analytic derivatives of binding_energy with respect to (d, g)
std::array<double, 2> binding_gradient(const AtomicModelParams& p, const QuantumState& s);
double transition_energy(const AtomicModelParams& p, const QuantumState& s);

// States that appear in the printed spectrum layout for shells 2..n_max:
// (N=1, j=l+1/2), (N=1, j=l-1/2), (N=0, j=l+1/2) with l = n-2, n-1, n-1.
std::vector<QuantumState> spectrum_states(int n_max);

struct LiModelParams {
  double alpha = kAlpha;
  double mass = 0.5109523e6;
  double a = 0.0;
  double b = 0.0;
  double g = 0.0;
  double limit_energy = 5.3917191;
};

LiModelParams li_params_s();        // l = 0 set
LiModelParams li_params_nonzero();  // l > 0 set
LiModelParams li_params_for(int l);

struct LiLevel {
  double binding_tilde;
  double transition;
};

LiLevel li_level(const LiModelParams& p, int n, int l, bool plus_branch = false);

double lamb_shift_estimate(double d, double u0, int Z, double mass);
double heI_estimate(int l, double du0, double alpha, double mass);
// Inverse of heI_estimate in du0 for a measured binding energy.
double heI_du0_from_binding(double energy, int l, double alpha, double mass);

struct AnsatzSolution {
  double D = 0.0;
  double B = 0.0;
  double E = 0.0;
  double W = 0.0;
  int N = 0;
  std::vector<double> roots;
  double Z_eff = 0.0;
  double a_scale = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double f = 0.0;
  int l = 0;
};

std::array<double, 4> ansatz_residuals(const AnsatzSolution& sol, const AtomicModelParams& params);

std::array<double, 2> degeneracy_exponents();

}  // namespace nf
