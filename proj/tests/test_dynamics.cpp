#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "nonfield/dynamics.hpp"
#include "nonfield/errors.hpp"
#include "oracles.hpp"

using namespace nf;

namespace {

double max_drift(const WaveState& start, double x_end, double step) {
  const double c0 = wave_first_integral(start);
  double worst = 0;
  for (const auto& s : integrate_wave_pair(start, x_end, step).points)
    worst = std::max(worst, std::fabs(wave_first_integral(s) - c0));
  return worst;
}

}  // namespace

TEST_CASE("equilibria stay put") {
  for (double a : {0.0, 1.0}) {
    const auto t = integrate_wave_pair({0, a, 0, a, 0}, 3.0, 1e-2);
    CHECK_FALSE(t.diverged);
    for (const auto& s : t.points) {
      CHECK(std::fabs(s.p - a) <= 1e-12);
      CHECK(std::fabs(s.v - a) <= 1e-12);
      CHECK(std::fabs(s.dp) <= 1e-12);
    }
  }
}

TEST_CASE("exponential solutions") {
  for (double sign : {1.0, -1.0}) {
    const auto t = integrate_wave_pair({0, 1, sign, 1, sign}, sign * 3.0, 1e-3);
    for (const auto& s : t.points) {
      CHECK(std::fabs(s.p / std::exp(sign * s.x) - 1) <= 1e-8);
      CHECK(std::fabs(s.v / std::exp(sign * s.x) - 1) <= 1e-8);
    }
  }
}

TEST_CASE("first integral is conserved at fourth order") {
  const WaveState start{0, 0.5, 0.3, 0.5, 0.3};
  CHECK(max_drift(start, 5, 1e-3) <= 1e-8);
  CHECK(max_drift(start, -5, 1e-3) <= 1e-8);
  const double d1 = max_drift(start, 5, 1e-2), d2 = max_drift(start, 5, 5e-3), d3 = max_drift(start, 5, 2.5e-3);
  const double order12 = std::log2(d1 / d2), order23 = std::log2(d2 / d3);
  CHECK(order12 == doctest::Approx(4).epsilon(0.15));
  CHECK(order23 == doctest::Approx(4).epsilon(0.15));
}

TEST_CASE("integrator input checks and blow-up") {
  CHECK_THROWS_AS(integrate_wave_pair({}, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(integrate_wave_pair({}, 1000, 0.01), InvalidArgument);
  const auto t = integrate_wave_pair({0, 3, 4, 3, 4}, 50, 0.01);
  CHECK(t.diverged);
  CHECK(t.points.size() >= 1);
  CHECK(trajectory_csv(integrate_wave_pair({}, 0.02, 0.01)).find("x,") == 0);
}

TEST_CASE("turning points") {
  const auto edge = turning_points(-std::exp(-1.0));
  CHECK(std::fabs(edge.p_minus - 1) <= 1e-6);
  CHECK(std::fabs(edge.p_plus - 1) <= 1e-6);

  auto f = [](double p) { return p * p * std::exp(-p * p) - 0.2; };
  const auto tp = turning_points(-0.2);
  CHECK(tp.p_minus == doctest::Approx(oracle::bisect(f, 0, 1)).epsilon(1e-12));
  CHECK(tp.p_plus == doctest::Approx(oracle::bisect(f, 1, 4)).epsilon(1e-12));

  const auto small = turning_points(-1e-8);
  CHECK(small.p_minus == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK_THROWS_AS(turning_points(-0.5), DomainError);
  CHECK_THROWS_AS(turning_points(0.1), DomainError);
}

TEST_CASE("Coulomb vacuum potential") {
  CHECK(coulomb_vacuum_potential(0.7, -1, 0).s == 0.7);
  CHECK(coulomb_vacuum_potential(0.7, -1, 0).s_prime == 1.0);
  CHECK(coulomb_vacuum_potential(0.7, -1, 1).s == doctest::Approx(0.7 + std::log(2.0)).epsilon(1e-15));
  CHECK(coulomb_vacuum_potential(0.7, 1e-9, 2).s == doctest::Approx(2.7).epsilon(1e-8));
  for (double u0 : {-1.0, -0.3, 0.4}) {
    for (double x : {0.1, 0.5, 1.2}) {
      if (1 - u0 * x <= 0.05) continue;
      const double h = 1e-4;
      const double sp = coulomb_vacuum_potential(0, u0, x + h).s, s0 = coulomb_vacuum_potential(0, u0, x).s,
                   sm = coulomb_vacuum_potential(0, u0, x - h).s;
      const double d1 = (sp - sm) / (2 * h), d2 = (sp - 2 * s0 + sm) / (h * h);
      CHECK(std::fabs(d2 - u0 * d1 * d1) <= 1e-5);
      CHECK(coulomb_vacuum_potential(0, u0, x).s_prime == doctest::Approx(d1).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(coulomb_vacuum_potential(0, 1, 1), DomainError);
}

TEST_CASE("light nucleus field") {
  const double eZ = 2, b = 0.5;
  CHECK(light_nucleus_field(eZ, b, 100).E == doctest::Approx(eZ / 100));
  const double inside = light_nucleus_field(eZ, b, b * (1 - 1e-12)).E;
  const double outside = light_nucleus_field(eZ, b, b * (1 + 1e-12)).E;
  CHECK(inside == doctest::Approx(outside).epsilon(1e-10));
  CHECK(light_nucleus_field(eZ, b, 0.1).d == doctest::Approx(2 * eZ * b));
  const double r = 1e-6;
  CHECK(light_nucleus_field(eZ, b, r).E * r == doctest::Approx(2 * eZ * b / b).epsilon(1e-5));
  CHECK_THROWS_AS(light_nucleus_field(eZ, 0, 1), InvalidArgument);
}

TEST_CASE("ideal stream") {
  const double c = 3.0, k = 2.0;
  CHECK(ideal_stream_velocity(k, 0, c) == 0.0);
  CHECK(ideal_stream_velocity(k, 1 / k, c) == doctest::Approx(c / std::numbers::sqrt2).epsilon(1e-15));
  CHECK(ideal_stream_velocity(k, 0.6 / k, c) == doctest::Approx(c * std::sqrt(0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(ideal_stream_velocity(k, 1, c), DomainError);
  double prev = stream_pressure(c, 1.0, -0.5, 0);
  for (double v = 0.1; v < 2.9; v += 0.1) {
    const double p = stream_pressure(c, 1.0, -0.5, v);
    CHECK(p < prev);
    prev = p;
  }
  CHECK(stream_pressure(c, 1.0, -0.5, 2.99) < 0);
}

TEST_CASE("rotational flow") {
  // r = A x + B / x
  CHECK(rotational_velocity(0.5, 0, 1, FlowBranch::subsonic) == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-10));
  CHECK(rotational_velocity(0.5, 0, 1, FlowBranch::supersonic) ==
        doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-10));
  CHECK(rotational_velocity(0, 0, 1, FlowBranch::subsonic) == 0.0);
  CHECK(rotational_velocity(0, 0, 1, FlowBranch::supersonic) == 1.0);
  CHECK_THROWS_AS(rotational_velocity(0.3, 0.3, 1, FlowBranch::subsonic), DomainError);
  CHECK_THROWS_AS(rotational_velocity(0.1, 0, 0, FlowBranch::subsonic), InvalidArgument);
  auto g = [](double v) { return v * std::sqrt(1 - v * v) - 0.3; };
  const double sub = rotational_velocity(0.1, 0.2, 1, FlowBranch::subsonic);
  CHECK(sub == doctest::Approx(oracle::bisect(g, 0, 1 / std::numbers::sqrt2)).epsilon(1e-12));
  const double sup = rotational_velocity(0.1, 0.2, 1, FlowBranch::supersonic);
  CHECK(sup == doctest::Approx(oracle::bisect(g, 1 / std::numbers::sqrt2, 1)).epsilon(1e-12));
  CHECK(parse_branch("subsonic") == FlowBranch::subsonic);
  CHECK_THROWS_AS(parse_branch("sideways"), ParseError);
}

TEST_CASE("gluonic resonances") {
  const double b = 0.7;
  const auto m0 = gluonic_resonance_mass2(b, 0, 0);
  CHECK(m0.real() == 0.0);
  CHECK(m0.imag() == doctest::Approx(-3 * b));
  // least squares slope of |m^2| over l = 0..5
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int l = 0; l <= 5; ++l) {
    const double y = std::abs(gluonic_resonance_mass2(b, 2, l));
    sx += l;
    sy += y;
    sxx += l * l;
    sxy += l * y;
  }
  const double slope = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
  CHECK(std::fabs(slope - 2 * b) <= 1e-12);
  CHECK_THROWS_AS(gluonic_resonance_mass2(b, -1, 0), InvalidArgument);
}
