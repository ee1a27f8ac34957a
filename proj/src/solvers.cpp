#include "nonfield/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nonfield/errors.hpp"

namespace nf {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

bool strictly_increasing(const Vec& v) {
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct ConvexProblem {
  std::function<double(const Vec&)> energy;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;
  std::function<bool(const Vec&)> admissible;
};

// Newton on a strictly convex energy with step halving that keeps the iterate
// admissible and the energy non-increasing.
Vec damped_newton(const ConvexProblem& p, Vec x, const SolverOptions& opt, int& iterations, const char* what) {
  double best = p.gradient(x).cwiseAbs().maxCoeff();
  for (iterations = 0; iterations < opt.max_iter; ++iterations) {
    const Vec g = p.gradient(x);
    const double gn = g.cwiseAbs().maxCoeff();
    best = std::min(best, gn);
    if (gn <= opt.target) return x;
    const Vec step = p.hessian(x).ldlt().solve(-g);
    const double e0 = p.energy(x);
    double t = 1.0;
    Vec trial = x + step;
    for (int h = 0; h < 60; ++h) {
      if (p.admissible(trial) && p.energy(trial) <= e0 + 1e-14 * std::fabs(e0)) break;
      t *= 0.5;
      trial = x + t * step;
    }
    if (!p.admissible(trial)) break;
    if ((trial - x).cwiseAbs().maxCoeff() == 0) break;
    x = trial;
  }
  const double gn = p.gradient(x).cwiseAbs().maxCoeff();
  if (gn <= opt.accept) return x;
  throw ConvergenceError(std::string(what) + " did not converge", std::min(best, gn));
}

}  // namespace

std::vector<double> coherent_residuals(double k, const std::vector<double>& s) {
  std::vector<double> r(s.size());
  for (size_t n = 0; n < s.size(); ++n) {
    double sum = 0;
    for (size_t i = 0; i < s.size(); ++i)
      if (i != n) sum += 1.0 / (s[n] - s[i]);
    r[n] = s[n] - 2 * k * sum;
  }
  return r;
}

CoherentRootSet solve_coherent_roots(double k, int count, const SolverOptions& opt) {
  if (!(k > 0) || !std::isfinite(k)) throw InvalidArgument("k must be positive");
  if (count < 1 || count > 50) throw InvalidArgument("count must lie in 1..50");
  CoherentRootSet out;
  out.k_int = k;
  if (count == 1) {
    out.roots = {0.0};
    return out;
  }
  const int n = count;
  Vec x(n);
  const double scale = std::sqrt(2 * k) * std::sqrt(2.0 * n + 1) * 0.9;
  for (int i = 0; i < n; ++i) x[i] = -scale * std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * n));

  ConvexProblem p;
  p.admissible = strictly_increasing;
  p.energy = [&](const Vec& s) {
    double e = 0.5 * s.squaredNorm();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e -= 2 * k * std::log(std::fabs(s[j] - s[i]));
    return e;
  };
  p.gradient = [&](const Vec& s) {
    Vec g(n);
    for (int a = 0; a < n; ++a) {
      double sum = 0;
      for (int b = 0; b < n; ++b)
        if (b != a) sum += 1.0 / (s[a] - s[b]);
      g[a] = s[a] - 2 * k * sum;
    }
    return g;
  };
  p.hessian = [&](const Vec& s) {
    Mat H = Mat::Identity(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const double w = 2 * k / ((s[a] - s[b]) * (s[a] - s[b]));
        H(a, a) += w;
        H(a, b) -= w;
      }
    return H;
  };
  x = damped_newton(p, x, opt, out.iterations, "coherent root solver");
  // enforce exact odd symmetry of the converged set
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (x[n - 1 - i] - x[i]);
    x[i] = -m;
    x[n - 1 - i] = m;
  }
  if (n % 2 == 1) x[n / 2] = 0;
  out.roots.assign(x.data(), x.data() + n);
  out.max_residual = max_abs(coherent_residuals(k, out.roots));
  return out;
}

std::vector<double> gluonic_root_residuals(const GluonicSystem& g) {
  const auto& R = g.roots;
  std::vector<double> r(R.size());
  for (size_t n = 0; n < R.size(); ++n) {
    double sum = 0;
    for (size_t k = 0; k < R.size(); ++k)
      if (k != n) sum += 1.0 / (R[n] - R[k]);
    r[n] = sum + g.A / (R[n] * R[n]) + (g.B + 1) / R[n];
  }
  return r;
}

double GluonicIdentities::max_abs() const {
  return std::max({std::fabs(a2_minus_2mg4), std::fabs(ab_minus_mg3), std::fabs(summed), std::fabs(count)});
}

GluonicIdentities gluonic_identities(const GluonicSystem& g) {
  GluonicIdentities id;
  id.a2_minus_2mg4 = g.A * g.A - 2 * g.m * g.g4;
  id.ab_minus_mg3 = g.A * g.B - g.m * g.g3;
  double s1 = 0, s2 = 0;
  for (double R : g.roots) {
    s1 += 1 / R;
    s2 += 1 / (R * R);
  }
  const double N = static_cast<double>(g.roots.size());
  id.summed = g.A * s2 + (g.B + 1) * s1;
  id.count = N * (N - 1) / 2 + g.A * s1 + (g.B + 1) * N;
  return id;
}

GluonicSystem solve_gluonic_system(double m, double g2, double g4, int N, int l, const SolverOptions& opt) {
  if (!(m > 0) || !(g2 > 0) || !(g4 > 0)) throw InvalidArgument("m, g2 and g4 must be positive");
  if (N < 0 || l < 0) throw InvalidArgument("N and l must be non-negative");
  if (N > 50) throw InvalidArgument("N must not exceed 50");
  GluonicSystem s;
  s.m = m;
  s.g2 = g2;
  s.g4 = g4;
  s.N = N;
  s.l = l;
  s.A = std::sqrt(2 * m * g4);
  s.B = -N - 0.5 - std::sqrt((l + 0.5) * (l + 0.5) + m * g2);
  s.g3 = s.A * s.B / m;
  if (N == 0) return s;
  const double A = s.A;
  const double c = s.B + N;  // negative
  if (N == 1) {
    s.roots = {-A / (s.B + 1)};
    return s;
  }
  // x = 1/R minimizes  -sum ln|x_i - x_j| + A sum x + c sum ln x
  ConvexProblem p;
  p.admissible = [](const Vec& x) { return x[0] > 0 && strictly_increasing(x); };
  p.energy = [&](const Vec& x) {
    double e = 0;
    for (int i = 0; i < N; ++i) {
      e += A * x[i] + c * std::log(x[i]);
      for (int j = i + 1; j < N; ++j) e -= std::log(x[j] - x[i]);
    }
    return e;
  };
  p.gradient = [&](const Vec& x) {
    Vec g(N);
    for (int a = 0; a < N; ++a) {
      double sum = 0;
      for (int b = 0; b < N; ++b)
        if (b != a) sum += 1.0 / (x[a] - x[b]);
      g[a] = -sum + A + c / x[a];
    }
    return g;
  };
  p.hessian = [&](const Vec& x) {
    Mat H = Mat::Zero(N, N);
    for (int a = 0; a < N; ++a) {
      H(a, a) = -c / (x[a] * x[a]);
      for (int b = 0; b < N; ++b) {
        if (a == b) continue;
        const double w = 1.0 / ((x[a] - x[b]) * (x[a] - x[b]));
        H(a, a) += w;
        H(a, b) -= w;
      }
    }
    return H;
  };
  // equally spaced positive guesses with the mean fixed by the counting identity
  Vec x(N);
  const double mean = (-(s.B + 1) - (N - 1) / 2.0) / A;
  for (int i = 0; i < N; ++i) x[i] = 2 * mean * (i + 1) / (N + 1.0);
  x = damped_newton(p, x, opt, s.iterations, "gluonic root solver");
  s.roots.resize(N);
  for (int i = 0; i < N; ++i) s.roots[i] = 1.0 / x[N - 1 - i];
  return s;
}

double inverse_radius_moment(double B, double A, int p) {
  if (!(A > 0)) throw InvalidArgument("A must be positive");
  if (p < 1) throw InvalidArgument("p must be at least 1");
  const double z = -2 * B - 3;
  if (!(z > 0)) throw DomainError("density R^(2B+2) exp(-2A/R) is not normalizable (need -2B-3 > 0)");
  double v = 1;
  for (int i = 0; i < p; ++i) v *= (z + i) / (2 * A);
  return v;
}

namespace {

double param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw InvalidArgument("missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw InvalidArgument("parameter '" + key + "' must be finite");
  return it->second;
}

double param_or(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  return p.count(key) ? param(p, key) : fallback;
}

}  // namespace

CoherenceResult coherence_residual(const std::string& case_id, const std::map<std::string, double>& params) {
  CoherenceResult r;
  r.case_id = case_id;
  constexpr double tol = 1e-10;
  if (case_id == "linear_vacuum") {
    // s = a + b x on [0, L]; coefficients of the free variations da, db
    const double a = param(params, "a"), b = param(params, "b"), L = param_or(params, "L", 1.0);
    if (!(L > 0)) throw InvalidArgument("L must be positive");
    r.values["residual_da"] = b * b * L;
    r.values["residual_db"] = b * b * L * L / 2 + 2 * a * b * L + b * b * L * L;
    r.values["b_solution"] = 0.0;
    r.satisfied = std::fabs(r.values["residual_da"]) <= tol && std::fabs(r.values["residual_db"]) <= tol;
  } else if (case_id == "quadratic_vacuum") {
    // s + s^2 = a + b x, so 1 + 2s = sqrt(1 + 4(a + b x))
    const double a = param(params, "a"), b = param(params, "b"), L = param_or(params, "L", 1.0);
    if (!(L > 0)) throw InvalidArgument("L must be positive");
    if (1 + 4 * a <= 0 || 1 + 4 * (a + b * L) <= 0) throw DomainError("1 + 4(a + b x) must stay positive on [0, L]");
    auto w = [&](double x) { return std::pow(1 + 4 * (a + b * x), -1.5); };
    using boost::math::quadrature::gauss_kronrod;
    const double i0 = gauss_kronrod<double, 61>::integrate(w, 0.0, L, 10, 1e-14);
    const double i1 = gauss_kronrod<double, 61>::integrate([&](double x) { return x * w(x); }, 0.0, L, 10, 1e-14);
    r.values["residual_da"] = b * b * i0;
    r.values["residual_db"] = b * b * i1;
    r.values["b_solution"] = 0.0;
    r.satisfied = std::fabs(r.values["residual_da"]) <= tol && std::fabs(r.values["residual_db"]) <= tol;
  } else if (case_id == "log_state") {
    const double b = param(params, "b");
    if (!(b > 0)) throw DomainError("log_state needs b > 0");
    const double a_sol = std::log(b) + 0.5;
    const double a = param_or(params, "a", a_sol);
    boost::math::quadrature::exp_sinh<double> integrator;
    const double quad = integrator.integrate([&](double x) { return (a - std::log(b + x)) / std::pow(b + x, 3); }, 0.0,
                                             std::numeric_limits<double>::infinity(), 1e-14);
    r.values["a"] = a;
    r.values["constraint"] = a - std::log(b) - 0.5;
    r.values["a_solution"] = a_sol;
    r.values["integral_closed_form"] = (a - std::log(b) - 0.5) / (2 * b * b);
    r.values["integral_quadrature"] = quad;
    r.satisfied = std::fabs(r.values["constraint"]) <= 1e-8;
  } else if (case_id == "coulomb_w_vacuum") {
    // u0 (s0 + q u0) = 1 and u0 (2 s0 + q u0) = 3
    const double u0 = param(params, "u0");
    if (u0 == 0) throw DomainError("u0 must be non-zero");
    const double s0 = 2 / u0;
    const double q = -1 / (u0 * u0);
    r.values["s0"] = s0;
    r.values["q"] = q;
    r.values["residual_1"] = u0 * (s0 + q * u0) - 1;
    r.values["residual_2"] = u0 * (2 * s0 + q * u0) - 3;
    r.satisfied = std::fabs(r.values["residual_1"]) <= tol && std::fabs(r.values["residual_2"]) <= tol;
  } else {
    throw NotFound("unknown coherence case '" + case_id +
                   "' (expected linear_vacuum, quadratic_vacuum, log_state or coulomb_w_vacuum)");
  }
  return r;
}

}  // namespace nf
