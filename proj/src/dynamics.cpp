#include "nonfield/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "nonfield/errors.hpp"

namespace nf {

namespace {

struct Deriv {
  double dp, ddp, dv, ddv;
};

Deriv rhs(double p, double dp, double v, double dv) {
  const double w = dp * dp - p * p;
  return {dp, p + v * w, dv, v + p * w};
}

bool finite_state(const WaveState& s) {
  constexpr double big = 1e150;
  return std::isfinite(s.p) && std::isfinite(s.dp) && std::isfinite(s.v) && std::isfinite(s.dv) &&
         std::fabs(s.p) < big && std::fabs(s.dp) < big && std::fabs(s.v) < big && std::fabs(s.dv) < big;
}

}  // namespace

Trajectory integrate_wave_pair(const WaveState& initial, double x_end, double step) {
  if (!(step > 0) || step > 0.1) throw InvalidArgument("step must lie in (0, 0.1]");
  if (!finite_state(initial) || !std::isfinite(initial.x)) throw InvalidArgument("initial state must be finite");
  const double span = x_end - initial.x;
  if (std::fabs(span) > 100) throw InvalidArgument("|x_end - x| must not exceed 100");
  Trajectory t;
  t.points.push_back(initial);
  if (span == 0) return t;
  const long n = static_cast<long>(std::ceil(std::fabs(span) / step - 1e-9));
  const double h = span / n;
  WaveState s = initial;
  for (long i = 0; i < n; ++i) {
    const Deriv k1 = rhs(s.p, s.dp, s.v, s.dv);
    const Deriv k2 = rhs(s.p + h / 2 * k1.dp, s.dp + h / 2 * k1.ddp, s.v + h / 2 * k1.dv, s.dv + h / 2 * k1.ddv);
    const Deriv k3 = rhs(s.p + h / 2 * k2.dp, s.dp + h / 2 * k2.ddp, s.v + h / 2 * k2.dv, s.dv + h / 2 * k2.ddv);
    const Deriv k4 = rhs(s.p + h * k3.dp, s.dp + h * k3.ddp, s.v + h * k3.dv, s.dv + h * k3.ddv);
    WaveState next;
    next.x = initial.x + (i + 1) * h;
    next.p = s.p + h / 6 * (k1.dp + 2 * k2.dp + 2 * k3.dp + k4.dp);
    next.dp = s.dp + h / 6 * (k1.ddp + 2 * k2.ddp + 2 * k3.ddp + k4.ddp);
    next.v = s.v + h / 6 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
    next.dv = s.dv + h / 6 * (k1.ddv + 2 * k2.ddv + 2 * k3.ddv + k4.ddv);
    if (!finite_state(next)) {
      t.diverged = true;
      break;
    }
    t.points.push_back(next);
    s = next;
  }
  return t;
}

double wave_first_integral(const WaveState& s) { return (s.dp * s.dp - s.p * s.p) * std::exp(-s.p * s.p); }

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  os << "x,p,dp,v,dv,first_integral\n";
  char buf[256];
  for (const auto& s : t.points) {
    std::snprintf(buf, sizeof buf, "%.10g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x, s.p, s.dp, s.v, s.dv,
                  wave_first_integral(s));
    os << buf;
  }
  return os.str();
}

TurningPoints turning_points(double C) {
  if (!std::isfinite(C)) throw InvalidArgument("C must be finite");
  if (C >= 0) throw DomainError("turning points need C < 0");
  const double edge = -std::exp(-1.0);
  constexpr double slack = 1e-12;
  if (C < edge - slack) throw DomainError("no turning points for C < -1/e");
  if (C <= edge + slack) return {1.0, 1.0, true};
  auto f = [C](double p) { return p * p * std::exp(-p * p) + C; };
  boost::math::tools::eps_tolerance<double> tol(50);
  auto lo = boost::math::tools::bisect(f, 0.0, 1.0, tol);
  double hi = 2.0;
  while (f(hi) > 0) hi *= 2;
  auto up = boost::math::tools::bisect(f, 1.0, hi, tol);
  return {0.5 * (lo.first + lo.second), 0.5 * (up.first + up.second), false};
}

CoulombVacuum coulomb_vacuum_potential(double s0, double u0, double x) {
  if (!std::isfinite(s0) || !std::isfinite(u0) || !std::isfinite(x)) throw InvalidArgument("arguments must be finite");
  if (u0 == 0) return {s0 + x, 1.0};
  const double r = 1 - u0 * x;
  if (!(r > 0)) throw DomainError("1 - u0 x must be positive (log branch point)");
  return {s0 - std::log1p(-u0 * x) / u0, 1 / r};
}

LightNucleusField light_nucleus_field(double eZ, double b, double R, double d) {
  if (!(R > 0) || !(b > 0)) throw InvalidArgument("R and b must be positive");
  if (R > b) return {eZ / R, d, false};
  return {d / (R * (R + b)), d, true};
}

LightNucleusField light_nucleus_field(double eZ, double b, double R) {
  return light_nucleus_field(eZ, b, R, 2 * eZ * b);
}

double ideal_stream_velocity(double k, double x, double c) {
  const double u = k * k * x * x;
  if (!(u <= 1)) throw DomainError("|k x| must not exceed 1");
  // v^2 = c^2/2 (1 - sqrt(1 - u)) = c^2/2 * u / (1 + sqrt(1 - u))
  return c * std::sqrt(u / (1 + std::sqrt(1 - u))) / std::numbers::sqrt2;
}

double stream_pressure(double c, double rho, double q, double v) {
  const double beta2 = v * v / (c * c);
  if (!(beta2 < 1)) throw DomainError("|v| must stay below c");
  return c * c * rho + q * c * c * rho / std::sqrt(1 - beta2);
}

FlowBranch parse_branch(const std::string& s) {
  if (s == "subsonic") return FlowBranch::subsonic;
  if (s == "supersonic") return FlowBranch::supersonic;
  throw ParseError("branch must be subsonic or supersonic, got '" + s + "'");
}

double rotational_velocity(double A_c, double B_c, double x, FlowBranch branch) {
  if (x == 0) throw InvalidArgument("x must be non-zero");
  const double r = A_c * x + B_c / x;
  if (!std::isfinite(r)) throw InvalidArgument("arguments must be finite");
  if (std::fabs(r) > 0.5) throw DomainError("|A x + B/x| exceeds 1/2: no steady rotational flow here");
  const double root = std::sqrt(std::max(0.0, 1 - 4 * r * r));
  const double v2 = branch == FlowBranch::subsonic ? 2 * r * r / (1 + root) : (1 + root) / 2;
  return std::copysign(std::sqrt(v2), r == 0 ? 1.0 : r);
}

std::complex<double> gluonic_resonance_mass2(double b_slope, int N, int l) {
  if (N < 0 || l < 0) throw InvalidArgument("N and l must be non-negative");
  return {0.0, -b_slope * (2 * N + 2 * l + 3)};
}

}  // namespace nf
