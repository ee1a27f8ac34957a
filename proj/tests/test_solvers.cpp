#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonfield/errors.hpp"
#include "nonfield/solvers.hpp"
#include "oracles.hpp"

using namespace nf;

namespace {

double energy(double k, const std::vector<double>& s) {
  double e = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    e += s[i] * s[i] / 2;
    for (size_t j = i + 1; j < s.size(); ++j) e -= 2 * k * std::log(std::fabs(s[i] - s[j]));
  }
  return e;
}

}  // namespace

TEST_CASE("coherent roots are scaled Hermite zeros") {
  for (double k : {0.5, 1.0, 2.0}) {
    for (int count : {1, 2, 3, 4, 6, 9}) {
      const auto r = solve_coherent_roots(k, count);
      const auto z = oracle::hermite_zeros(count);
      REQUIRE(z.size() == static_cast<size_t>(count));
      REQUIRE(r.roots.size() == z.size());
      for (int i = 0; i < count; ++i) CHECK(std::fabs(r.roots[i] - std::sqrt(2 * k) * z[i]) <= 1e-10);
      CHECK(r.max_residual <= 1e-10);
    }
  }
  CHECK_THROWS_AS(solve_coherent_roots(1, 0), InvalidArgument);
  CHECK_THROWS_AS(solve_coherent_roots(-1, 3), InvalidArgument);
  CHECK_THROWS_AS(solve_coherent_roots(1, -2), InvalidArgument);
}

TEST_CASE("coherent roots are critical points of the log-gas energy") {
  const double k = 0.5;
  const auto s = solve_coherent_roots(k, 6).roots;
  const double h = 1e-6;
  for (size_t i = 0; i < s.size(); ++i) {
    auto up = s, dn = s;
    up[i] += h;
    dn[i] -= h;
    CHECK(std::fabs((energy(k, up) - energy(k, dn)) / (2 * h)) <= 1e-8);
  }
  for (size_t i = 0; i < s.size(); ++i) CHECK(std::fabs(s[i] + s[s.size() - 1 - i]) <= 1e-12);
  CHECK(std::is_sorted(s.begin(), s.end()));
}

TEST_CASE("coherent residuals of a perturbed set are non-zero") {
  auto s = solve_coherent_roots(1, 4).roots;
  s[0] -= 0.01;
  const auto r = coherent_residuals(1, s);
  CHECK(*std::max_element(r.begin(), r.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); }) != 0.0);
}

TEST_CASE("gluonic roots follow Laguerre zeros") {
  for (int N : {2, 3, 5}) {
    for (int l : {0, 2}) {
      const auto g = solve_gluonic_system(1.0, 1.5, 0.8, N, l);
      const double alpha = -2 * g.B - 2 * N - 1;
      REQUIRE(alpha > -1);
      auto y = oracle::laguerre_zeros(N, alpha);
      REQUIRE(y.size() == static_cast<size_t>(N));
      // R = 2A / y, ascending R means descending y
      std::vector<double> want;
      for (double v : y) want.push_back(2 * g.A / v);
      std::sort(want.begin(), want.end());
      for (int i = 0; i < N; ++i) CHECK(g.roots[i] == doctest::Approx(want[i]).epsilon(1e-10));
      for (double r : gluonic_root_residuals(g)) CHECK(std::fabs(r) <= 1e-9);
    }
  }
}

TEST_CASE("gluonic identities") {
  for (int N : {0, 1, 3}) {
    const auto g = solve_gluonic_system(0.7, 2.0, 1.3, N, 1);
    const auto id = gluonic_identities(g);
    CHECK(id.max_abs() <= 1e-9);
    CHECK(g.A == doctest::Approx(std::sqrt(2 * 0.7 * 1.3)));
  }
  const auto one = solve_gluonic_system(0.7, 2.0, 1.3, 1, 1);
  CHECK(std::fabs(one.roots[0] - (-one.A / (one.B + 1))) <= 1e-12);
  // the summed identity comes out of the per-root equations without being imposed: break one root
  auto broken = solve_gluonic_system(0.7, 2.0, 1.3, 3, 1);
  broken.roots[1] *= 1.01;
  CHECK(std::fabs(gluonic_identities(broken).summed) > 1e-6);
  CHECK_THROWS_AS(solve_gluonic_system(0, 1, 1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(solve_gluonic_system(1, 1, 1, -1, 0), InvalidArgument);
}

TEST_CASE("inverse radius moments against quadrature") {
  for (double B : {-2.0, -2.7, -4.1}) {
    for (double A : {0.5, 1.0, 3.0}) {
      // in x = 1/R the density becomes x^(z-1) exp(-2A x), z = -2B-3
      const double z = -2 * B - 3;
      auto weight = [&](double x, int p) { return std::pow(x, z - 1 + p) * std::exp(-2 * A * x); };
      const double top = (z + 60) / A;
      const double norm = oracle::simpson([&](double x) { return weight(x, 0); }, 0, top);
      for (int p : {1, 2, 3}) {
        const double quad = oracle::simpson([&](double x) { return weight(x, p); }, 0, top) / norm;
        CHECK(std::fabs(inverse_radius_moment(B, A, p) / quad - 1) <= 1e-8);
      }
    }
  }
  CHECK(inverse_radius_moment(-2, 1, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(inverse_radius_moment(-1.5, 1, 1), DomainError);
  CHECK_THROWS_AS(inverse_radius_moment(-2, 0, 1), InvalidArgument);
}

TEST_CASE("coherence cases") {
  const auto w = coherence_residual("coulomb_w_vacuum", {{"u0", -1}});
  CHECK(w.values.at("s0") == -2.0);
  CHECK(w.values.at("q") == -1.0);
  CHECK(w.satisfied);

  CHECK(coherence_residual("linear_vacuum", {{"a", 1.0}, {"b", 0.0}}).satisfied);
  CHECK_FALSE(coherence_residual("linear_vacuum", {{"a", 1.0}, {"b", 0.2}}).satisfied);
  CHECK(coherence_residual("quadratic_vacuum", {{"a", 0.3}, {"b", 0.0}}).satisfied);
  CHECK_FALSE(coherence_residual("quadratic_vacuum", {{"a", 0.3}, {"b", 0.1}}).satisfied);

  for (double b : {0.5, 1.0, 2.0}) {
    const auto r = coherence_residual("log_state", {{"b", b}});
    const double a = r.values.at("a_solution");
    CHECK(std::fabs(a - (std::log(b) + 0.5)) <= 1e-12);
    // the weighted integral vanishes at the solution; map [0, inf) to [0, 1)
    auto f = [&](double t) {
      if (t >= 1) return 0.0;
      const double x = t / (1 - t);
      return (a - std::log(b + x)) / std::pow(b + x, 3) / ((1 - t) * (1 - t));
    };
    CHECK(std::fabs(oracle::simpson(f, 0, 1)) <= 1e-8);
    const auto off = coherence_residual("log_state", {{"b", b}, {"a", a + 0.1}});
    CHECK(off.values.at("integral_quadrature") == doctest::Approx(0.1 / (2 * b * b)).epsilon(1e-8));
  }
  CHECK(coherence_residual("log_state", {{"b", 1.0}}).values.at("a_solution") == doctest::Approx(0.5));
  CHECK_THROWS_AS(coherence_residual("nope", {}), NotFound);
  CHECK_THROWS_AS(coherence_residual("linear_vacuum", {{"a", 1.0}}), InvalidArgument);
}
