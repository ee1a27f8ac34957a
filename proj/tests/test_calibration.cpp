#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "nonfield/calibration.hpp"
#include "nonfield/errors.hpp"
#include "nonfield/nuclei.hpp"
#include "nonfield/refdata.hpp"

using namespace nf;

namespace {

double rel(double a, double b) { return std::fabs(a / b - 1); }

ReferenceTable in_mev(ReferenceTable t) {
  for (auto& r : t.rows) {
    if (!r.has_value()) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r.value() * 1e-6);
    r.value_text = buf;
    r.unit = "MeV";
  }
  return t;
}

}  // namespace

TEST_CASE("atomic fit recovers synthetic parameters") {
  for (const char* sys : {"heII", "hydrogen"}) {
    for (auto [d, g] : {std::pair{0.05634, 0.1487}, std::pair{0.0731, 0.20193}, std::pair{0.02, 0.3}}) {
      const auto t = synthesize_atomic(sys, d, g, 20);
      const auto fit = calibrate_atomic(sys, t);
      CHECK(fit.converged);
      CHECK(std::fabs(fit.d - d) <= 1e-9);
      CHECK(std::fabs(fit.g - g) <= 1e-9);
      // cost never rises along the damped iteration
      for (size_t i = 1; i < fit.cost_trace.size(); ++i) CHECK(fit.cost_trace[i] <= fit.cost_trace[i - 1] * (1 + 1e-12));
    }
  }
}

TEST_CASE("atomic fit on the printed observations") {
  const auto he = calibrate_atomic("heII", builtin_reference("heII").only(Source::paper_obs));
  CHECK(std::fabs(he.d - 0.05634) <= 2e-3);
  CHECK(std::fabs(he.g - 0.1487) <= 2e-3);
  const auto h = calibrate_atomic("hydrogen", builtin_reference("hydrogen").only(Source::paper_obs));
  CHECK(std::fabs(h.d - 0.0731) <= 2e-3);
  CHECK(std::fabs(h.g - 0.20193) <= 2e-3);
  CHECK_THROWS_AS(calibrate_atomic("liI", builtin_reference("liI")), Error);
  CHECK_THROWS_AS(calibrate_atomic("heII", ReferenceTable{}), Error);
}

TEST_CASE("atomic fit is unit independent" * doctest::may_fail()) {
  const auto obs = builtin_reference("heII").only(Source::paper_obs);
  const auto ev = calibrate_atomic("heII", obs);
  const auto mev = calibrate_atomic("heII", in_mev(obs));
  CHECK(mev.unit == "MeV");
  // with a condition number near 700 the unit conversion's rounding alone moves (d, g) by ~1e-11
  CHECK(std::fabs(ev.d - mev.d) <= 1e-12);
  CHECK(std::fabs(ev.g - mev.g) <= 1e-12);
}

TEST_CASE("atomic fit is unit independent to rounding level") {
  const auto obs = builtin_reference("heII").only(Source::paper_obs);
  const auto ev = calibrate_atomic("heII", obs);
  const auto mev = calibrate_atomic("heII", in_mev(obs));
  CHECK(std::fabs(ev.d - mev.d) <= 1e-9);
  CHECK(std::fabs(ev.g - mev.g) <= 1e-9);
}

TEST_CASE("nuclear calibration from the two anchors") {
  const auto fit = calibrate_nuclei(2.224, 28.284);
  CHECK(fit.converged);
  CHECK(rel(fit.G, 302.316) <= 1e-3);
  CHECK(rel(fit.k, 0.3908) <= 1e-3);
  CHECK(rel(fit.d, 0.4317) <= 1e-3);
  for (double r : fit.residuals) CHECK(std::fabs(r) <= 1e-9);

  // the solved parameters reproduce the anchors through the forward model
  const auto cal = to_calibration(fit);
  CHECK(pair_energy(make_field(1, 2, cal), ShellState{}) == doctest::Approx(2.224).epsilon(1e-9));
  CHECK(2 * pair_energy(make_field(2, 4, cal), ShellState{}) == doctest::Approx(28.284).epsilon(1e-9));
}

TEST_CASE("nuclear calibration moves smoothly with the anchors") {
  const auto a = calibrate_nuclei(2.224, 28.284);
  const auto b = calibrate_nuclei(2.224 * 1.01, 28.284 * 1.01);
  const auto c = calibrate_nuclei(2.224 * 1.001, 28.284 * 1.001);
  CHECK(std::isfinite(a.jacobian_condition));
  for (auto [x, y, z] : {std::tuple{a.G, b.G, c.G}, std::tuple{a.k, b.k, c.k}, std::tuple{a.d, b.d, c.d}}) {
    CHECK(rel(y, x) < 0.05);
    // first order response: ten times the step gives about ten times the shift
    CHECK((y - x) / (z - x) == doctest::Approx(10).epsilon(0.05));
  }
}

TEST_CASE("spin-orbit calibration" * doctest::may_fail()) {
  const auto fit = calibrate_nuclei(2.224, 28.284, true, {296.5, 0.4, 0.44});
  CHECK(fit.converged);
  CHECK(rel(fit.G, 296.511) <= 1e-3);
  CHECK(rel(fit.k, 0.3997) <= 1e-3);
  // printed 0.468 disagrees with the condition that defines d; see the decision notes
  CHECK(rel(fit.d, 0.468) <= 1e-3);
}

TEST_CASE("k1 from the triton sum") {
  const auto fit = calibrate_k1(8.481);
  CHECK(std::fabs(fit.k1 - 0.2125) <= 1e-3);
  CHECK(fit.forward == doctest::Approx(8.481).epsilon(1e-9));
  CHECK(std::fabs(triton_excitation_sum(0.2125, base_calibration()) - 8.48) <= 0.01);
  double prev = 1;
  for (double t = 8.0; t <= 9.0; t += 0.1) {
    const double k1 = calibrate_k1(t).k1;
    CHECK(k1 < prev);
    prev = k1;
  }
  CHECK_THROWS_AS(calibrate_k1(-1), Error);
  CHECK_THROWS_AS(calibrate_k1(1000), Error);
}

TEST_CASE("fit reports serialize") {
  const auto j = to_json(calibrate_k1(8.481));
  CHECK(j["parameters"].contains("k1"));
  const auto n = to_json(calibrate_nuclei(2.224, 28.284));
  CHECK(n["converged"] == true);
  const auto a = to_json(calibrate_atomic("hydrogen", synthesize_atomic("hydrogen", 0.0731, 0.20193)));
  CHECK(a["rows"].size() > 10);
}
