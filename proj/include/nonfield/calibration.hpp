#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonfield/atomic.hpp"
#include "nonfield/nuclei.hpp"
#include "nonfield/refdata.hpp"

namespace nf {

AtomicModelParams atomic_params(const std::string& system);  // heII or hydrogen

struct FitRow {
  std::string label;
  double observed = 0;
  double calculated = 0;
  double residual = 0;  // calculated - observed, in the table unit
};

struct AtomicFit {
  std::string system;
  std::string unit;
  double d = 0;
  double g = 0;
  std::array<double, 2> initial{0.05, 0.15};
  int iterations = 0;
  bool converged = false;
  double cost = 0;  // half the sum of squared dimensionless residuals
  std::vector<double> cost_trace;
  std::vector<FitRow> rows;
};

// Least squares over (d, g) on the unflagged N=0, j=l+1/2 rows of `observed`.
AtomicFit calibrate_atomic(const std::string& system, const ReferenceTable& observed, double d0 = 0.05,
                           double g0 = 0.15);

// N=0, j=l+1/2 transition rows for n = 2..n_max generated by the forward model
ReferenceTable synthesize_atomic(const std::string& system, double d, double g, int n_max = 20,
                                 const std::string& unit = "eV");

struct NucleiFit {
  double G = 0, k = 0, d = 0;
  bool so = false;
  int iterations = 0;
  bool converged = false;
  std::array<double, 3> residuals{};
  double jacobian_condition = 0;
};

// deuteron = pair(A=2,(0,0)), alpha = 2 pair(A=4,(0,0)),
// d = pionic nucleon energy of (0,1) in the A=2 field (the minus branch with spin-orbit)
NucleiFit calibrate_nuclei(double deuteron, double alpha, bool so = false,
                           std::array<double, 3> start = {300.0, 0.4, 0.45});
Calibration to_calibration(const NucleiFit& fit);

struct K1Fit {
  double k1 = 0;
  double forward = 0;
  int iterations = 0;
};

K1Fit calibrate_k1(double triton_binding, const Calibration& cal = base_calibration());

nlohmann::json to_json(const AtomicFit& f);
nlohmann::json to_json(const NucleiFit& f);
nlohmann::json to_json(const K1Fit& f);

}  // namespace nf
