#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nf {

struct WaveState {
  double x = 0;
  double p = 0, dp = 0;
  double v = 0, dv = 0;
};

struct Trajectory {
  std::vector<WaveState> points;
  bool diverged = false;  // integration stopped early, last point is the last finite state
};

// p'' = p + v (p'^2 - p^2),  v'' = v + p (p'^2 - p^2), classical RK4 with a fixed step
Trajectory integrate_wave_pair(const WaveState& initial, double x_end, double step);

// C = (p'^2 - p^2) exp(-p^2); constant along v == p trajectories
double wave_first_integral(const WaveState& s);

std::string trajectory_csv(const Trajectory& t);

struct TurningPoints {
  double p_minus = 0;
  double p_plus = 0;
  bool degenerate = false;
};

// roots of p^2 + C exp(p^2) = 0 for -1/e <= C < 0
TurningPoints turning_points(double C);

struct CoulombVacuum {
  double s = 0;
  double s_prime = 0;
};

CoulombVacuum coulomb_vacuum_potential(double s0, double u0, double x);

struct LightNucleusField {
  double E = 0;
  double d = 0;
  bool inside = false;
};

// d defaults to the continuous choice 2 eZ b
LightNucleusField light_nucleus_field(double eZ, double b, double R);
LightNucleusField light_nucleus_field(double eZ, double b, double R, double d);

double ideal_stream_velocity(double k, double x, double c);
double stream_pressure(double c, double rho, double q, double v);

enum class FlowBranch { subsonic, supersonic };
FlowBranch parse_branch(const std::string& s);

// v sqrt(1 - v^2) = A x + B / x
double rotational_velocity(double A_c, double B_c, double x, FlowBranch branch);

std::complex<double> gluonic_resonance_mass2(double b_slope, int N, int l);

}  // namespace nf
