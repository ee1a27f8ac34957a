#pragma once

#include <map>
#include <string>
#include <vector>

namespace nf {

struct SolverOptions {
  int max_iter = 200;
  double target = 1e-12;
  double accept = 1e-10;
};

struct CoherentRootSet {
  double k_int = 0;
  std::vector<double> roots;  // ascending
  double max_residual = 0;
  int iterations = 0;
};

// s_n = 2k * sum_{i != n} 1/(s_n - s_i)
CoherentRootSet solve_coherent_roots(double k, int count, const SolverOptions& opt = {});
std::vector<double> coherent_residuals(double k, const std::vector<double>& s);

struct GluonicSystem {
  double m = 0, g2 = 0, g3 = 0, g4 = 0;
  int N = 0, l = 0;
  double A = 0, B = 0;
  std::vector<double> roots;  // R_n > 0, ascending
  int iterations = 0;
};

GluonicSystem solve_gluonic_system(double m, double g2, double g4, int N, int l, const SolverOptions& opt = {});

// per-root equations  sum_{k != n} 1/(R_n - R_k) ... written in x = 1/R:
//   sum_{k != n} 1/(x_n - x_k) = A + (B+N)/x_n
std::vector<double> gluonic_root_residuals(const GluonicSystem& g);

struct GluonicIdentities {
  double a2_minus_2mg4 = 0;
  double ab_minus_mg3 = 0;
  double summed = 0;  // A*sum 1/R^2 + (B+1)*sum 1/R
  double count = 0;   // N(N-1)/2 + A*sum 1/R + (B+1)*N
  double max_abs() const;
};

GluonicIdentities gluonic_identities(const GluonicSystem& g);

// <R^-p> for the density R^(2B+2) exp(-2A/R) on (0, inf)
double inverse_radius_moment(double B, double A, int p);

struct CoherenceResult {
  std::string case_id;
  std::map<std::string, double> values;
  bool satisfied = false;
};

// case_id in {linear_vacuum, quadratic_vacuum, log_state, coulomb_w_vacuum}
CoherenceResult coherence_residual(const std::string& case_id, const std::map<std::string, double>& params);

}  // namespace nf
