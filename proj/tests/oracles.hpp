#pragma once

// Reference computations written independently of the engine.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// physicists' Hermite H_n(x) by the three-term recurrence
inline double hermite(int n, double x) {
  double h0 = 1, h1 = 2 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2 * x * h1 - 2 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// generalized Laguerre L_n^a(x)
inline double laguerre(int n, double a, double x) {
  double l0 = 1, l1 = 1 + a - x;
  if (n == 0) return l0;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2 * k + 1 + a - x) * l1 - (k + a) * l0) / (k + 1);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// all sign changes of f on a fine grid over [a, b], refined by bisection
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, int cells) {
  std::vector<double> out;
  const double h = (b - a) / cells;
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = a + i * h, f1 = f(x1);
    if (f1 == 0) out.push_back(x1);
    else if (f0 != 0 && (f0 < 0) != (f1 < 0)) out.push_back(bisect(f, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return out;
}

inline std::vector<double> hermite_zeros(int n) {
  const double edge = std::sqrt(2.0 * n + 1) + 1;
  return scan_roots([n](double x) { return hermite(n, x); }, -edge, edge, 4000 * (n + 1));
}

inline std::vector<double> laguerre_zeros(int n, double a) {
  const double edge = 4.0 * n + 2 * std::fabs(a) + 10;
  return scan_roots([n, a](double x) { return laguerre(n, a, x); }, 1e-12, edge, 20000 * (n + 1));
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double eps, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) return left + right + delta / 15;
  // below a few ulps of the panel value further halving only chases rounding
  const double next = std::max(eps / 2, 16 * std::numeric_limits<double>::epsilon() * std::fabs(whole));
  return simpson_step(f, a, m, fa, flm, fm, left, next, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, next, depth - 1);
}
}  // namespace detail

// adaptive Simpson with a tolerance relative to the size of the integral
inline double simpson(const std::function<double(double)>& f, double a, double b, double rel = 1e-12) {
  constexpr int panels = 64;
  const double h = (b - a) / panels;
  double rough = 0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h;
    rough += h / 6 * (f(x0) + 4 * f(x0 + h / 2) + f(x0 + h));
  }
  const double eps = rel * std::max(std::fabs(rough), 1e-300) / panels;
  double total = 0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h, x1 = x0 + h;
    const double fa = f(x0), fb = f(x1), fm = f(0.5 * (x0 + x1));
    total += detail::simpson_step(f, x0, x1, fa, fm, fb, h / 6 * (fa + 4 * fm + fb), eps, 40);
  }
  return total;
}

// Dirac-Coulomb binding energy m(1 - 1/sqrt(1 + x/(n - delta)^2)), x = (alpha Z)^2
inline double dirac_binding(double mass, double alpha, double Z, int n, int two_j) {
  const double x = alpha * alpha * Z * Z;
  const double kappa = (two_j + 1) / 2.0;
  const double nr = n - kappa + std::sqrt(kappa * kappa - x);
  return mass * (1 - 1 / std::sqrt(1 + x / (nr * nr)));
}

}  // namespace oracle
