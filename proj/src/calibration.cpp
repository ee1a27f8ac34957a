#include "nonfield/calibration.hpp"
#include <cstdio>

#include <cmath>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "nonfield/errors.hpp"

namespace nf {

namespace {

double unit_scale(const std::string& unit) {
  if (unit == "eV") return 1.0;
  if (unit == "keV") return 1e-3;
  if (unit == "MeV") return 1e-6;
  throw InvalidArgument("energy unit must be eV, keV or MeV, got '" + unit + "'");
}

struct FitPoint {
  std::string label;
  QuantumState state;
  double observed;
};

}  // namespace

AtomicModelParams atomic_params(const std::string& system) {
  if (system == "heII") return he2_params();
  if (system == "hydrogen") return hydrogen_params();
  throw NotFound("unknown atomic system '" + system + "' (expected heII or hydrogen)");
}

AtomicFit calibrate_atomic(const std::string& system, const ReferenceTable& observed, double d0, double g0) {
  const AtomicModelParams base = atomic_params(system);
  AtomicFit fit;
  fit.system = system;
  fit.initial = {d0, g0};
  fit.unit = observed.energy_unit();
  if (fit.unit.empty()) throw InvalidArgument("observed table carries no energy rows");
  const double scale = unit_scale(fit.unit);

  std::vector<FitPoint> pts;
  for (const auto& r : observed.rows) {
    if (r.series != "N0_plus" || r.flagged() || !r.has_value() || !r.n || !r.l || !r.two_j) continue;
    QuantumState s = QuantumState::make(*r.n - (*r.two_j + 1) / 2, *r.l, *r.two_j);
    if (s.N != 0 || !s.plus()) continue;
    pts.push_back({r.label, s, r.value()});
  }
  if (pts.size() < 2) throw InvalidArgument("need at least two unflagged N=0, j=l+1/2 lines to fit (d, g)");

  // residuals are divided by the mass in the table unit, so the fit is unit-free
  AtomicModelParams p = base;
  p.mass = base.mass * scale;
  const long m = static_cast<long>(pts.size());
  auto residuals = [&](const Eigen::Vector2d& th) {
    AtomicModelParams q = p;
    q.d = th[0];
    q.g = th[1];
    Eigen::VectorXd r(m);
    for (long i = 0; i < m; ++i) r[i] = (transition_energy(q, pts[i].state) - pts[i].observed) / q.mass;
    return r;
  };
  auto cost_of = [](const Eigen::VectorXd& r) { return 0.5 * r.squaredNorm(); };

  auto jacobian = [&](const Eigen::Vector2d& at) {
    AtomicModelParams q = p;
    q.d = at[0];
    q.g = at[1];
    static const QuantumState ground = QuantumState::make(0, 0, 1);
    const auto g0 = binding_gradient(q, ground);
    Eigen::MatrixXd J(m, 2);
    for (long i = 0; i < m; ++i) {
      const auto gi = binding_gradient(q, pts[i].state);
      J(i, 0) = (g0[0] - gi[0]) / q.mass;
      J(i, 1) = (g0[1] - gi[1]) / q.mass;
    }
    return J;
  };

  Eigen::Vector2d th(d0, g0);
  Eigen::VectorXd r = residuals(th);
  double cost = cost_of(r);
  fit.cost_trace.push_back(cost);
  double lambda = 1e-3;
  constexpr int kMaxIter = 200;
  for (fit.iterations = 0; fit.iterations < kMaxIter; ++fit.iterations) {
    const Eigen::MatrixXd J = jacobian(th);
    const Eigen::Matrix2d JtJ = J.transpose() * J;
    const Eigen::Vector2d grad = J.transpose() * r;
    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::Matrix2d M = JtJ;
      M.diagonal() += lambda * JtJ.diagonal();
      const Eigen::Vector2d step = M.ldlt().solve(-grad);
      const Eigen::Vector2d trial = th + step;
      double trial_cost = std::numeric_limits<double>::infinity();
      Eigen::VectorXd tr;
      try {
        tr = residuals(trial);
        trial_cost = cost_of(tr);
      } catch (const DomainError&) {
      }
      if (trial_cost < cost) {
        const bool tiny = (step.array().abs() <= 1e-14 * (1 + th.array().abs())).all();
        th = trial;
        r = tr;
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (tiny) fit.converged = true;
        break;
      }
      lambda *= 10;
    }
    fit.cost_trace.push_back(cost);
    if (!accepted) {
      // no descent left at any damping: a numerical minimum
      fit.converged = true;
      break;
    }
    if (fit.converged) break;
  }
  // Undamped polish. The cost is flat to rounding here, so steps are kept
  // while they shrink.
  double last_step = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10; ++k) {
    const Eigen::Vector2d step = jacobian(th).colPivHouseholderQr().solve(-r);
    const double size = step.cwiseAbs().maxCoeff();
    if (!std::isfinite(size) || size >= last_step) break;
    Eigen::VectorXd tr;
    try {
      tr = residuals(th + step);
    } catch (const DomainError&) {
      break;
    }
    if (cost_of(tr) > cost * (1 + 1e-6)) break;
    th += step;
    r = tr;
    cost = cost_of(tr);
    last_step = size;
    if (size <= 1e-15 * (1 + th.cwiseAbs().maxCoeff())) break;
  }
  fit.d = th[0];
  fit.g = th[1];
  fit.cost = cost;
  AtomicModelParams q = p;
  q.d = fit.d;
  q.g = fit.g;
  for (const auto& pt : pts) {
    const double c = transition_energy(q, pt.state);
    fit.rows.push_back({pt.label, pt.observed, c, c - pt.observed});
  }
  return fit;
}

ReferenceTable synthesize_atomic(const std::string& system, double d, double g, int n_max, const std::string& unit) {
  if (n_max < 3) throw InvalidArgument("n_max must be at least 3");
  AtomicModelParams p = atomic_params(system);
  p.d = d;
  p.g = g;
  const double scale = unit_scale(unit);
  ReferenceTable t;
  t.name = system + "_synthetic";
  char buf[64];
  for (int n = 2; n <= n_max; ++n) {
    const QuantumState s = QuantumState::make(0, n - 1, 2 * n - 1);
    ReferenceRow r;
    r.system = system;
    r.label = s.label;
    r.n = n;
    r.l = n - 1;
    r.two_j = 2 * n - 1;
    r.series = "N0_plus";
    std::snprintf(buf, sizeof buf, "%.17g", transition_energy(p, s) * scale);
    r.value_text = buf;
    r.unit = unit;
    r.source = Source::external;
    t.rows.push_back(r);
  }
  return t;
}

namespace {

Calibration fit_calibration(const Eigen::Vector3d& x, bool so) {
  Calibration c = so ? so_calibration() : base_calibration();
  c.tag = so ? "so-fit" : "base-fit";
  c.G = x[0];
  c.k = x[1];
  c.d = x[2];
  return c;
}

Eigen::Vector3d nuclei_residuals(const Eigen::Vector3d& x, double deuteron, double alpha, bool so) {
  const Calibration c = fit_calibration(x, so);
  const PionicField f2 = make_field(1, 2, c);
  const PionicField f4 = make_field(2, 4, c);
  const ShellState s00{0, 0, Sign::none};
  const ShellState s01{0, 1, so ? Sign::minus : Sign::none};
  Eigen::Vector3d r;
  r[0] = pair_energy(f2, s00) - deuteron;
  r[1] = 2 * pair_energy(f4, s00) - alpha;
  r[2] = x[2] - pionic_energy(f2, s01, false);
  return r;
}

}  // namespace

NucleiFit calibrate_nuclei(double deuteron, double alpha, bool so, std::array<double, 3> start) {
  if (!(deuteron > 0) || !(alpha > 0)) throw InvalidArgument("anchors must be positive");
  NucleiFit fit;
  fit.so = so;
  Eigen::Vector3d x(start[0], start[1], start[2]);
  auto F = [&](const Eigen::Vector3d& v) { return nuclei_residuals(v, deuteron, alpha, so); };
  auto jac = [&](const Eigen::Vector3d& v) {
    Eigen::Matrix3d J;
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-6 * std::max(std::fabs(v[j]), 1e-3);
      Eigen::Vector3d a = v, b = v;
      a[j] += h;
      b[j] -= h;
      J.col(j) = (F(a) - F(b)) / (2 * h);
    }
    return J;
  };
  Eigen::Vector3d r = F(x);
  constexpr int kMaxIter = 100;
  for (fit.iterations = 0; fit.iterations < kMaxIter; ++fit.iterations) {
    if (r.cwiseAbs().maxCoeff() <= 1e-12) {
      fit.converged = true;
      break;
    }
    const Eigen::Matrix3d J = jac(x);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(J);
    if (!lu.isInvertible()) throw ConvergenceError("singular Jacobian in the nuclear calibration", r.norm());
    const Eigen::Vector3d step = lu.solve(-r);
    double t = 1;
    bool moved = false;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      try {
        const Eigen::Vector3d trial = x + t * step;
        const Eigen::Vector3d tr = F(trial);
        if (tr.norm() < r.norm()) {
          x = trial;
          r = tr;
          moved = true;
          break;
        }
      } catch (const Error&) {
      }
    }
    if (!moved) break;
  }
  if (!fit.converged && r.cwiseAbs().maxCoeff() <= 1e-9) fit.converged = true;
  if (!fit.converged) throw ConvergenceError("nuclear calibration did not converge", r.norm());
  fit.G = x[0];
  fit.k = x[1];
  fit.d = x[2];
  for (int i = 0; i < 3; ++i) fit.residuals[i] = r[i];
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(jac(x));
  const auto sv = svd.singularValues();
  fit.jacobian_condition = sv[0] / sv[2];
  return fit;
}

Calibration to_calibration(const NucleiFit& fit) { return fit_calibration({fit.G, fit.k, fit.d}, fit.so); }

K1Fit calibrate_k1(double triton_binding, const Calibration& cal) {
  if (!(triton_binding > 0)) throw InvalidArgument("triton binding must be positive");
  auto f = [&](double k1) { return triton_excitation_sum(k1, cal) - triton_binding; };
  const double lo = 1e-9, hi = 1 - 1e-9;
  if (f(lo) * f(hi) > 0)
    throw ConvergenceError("no sign change for k1 in (0, 1): triton binding outside the model range", std::fabs(f(lo)));
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, iters);
  K1Fit out;
  out.k1 = 0.5 * (a + b);
  out.forward = triton_excitation_sum(out.k1, cal);
  out.iterations = static_cast<int>(iters);
  return out;
}

nlohmann::json to_json(const AtomicFit& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : f.rows)
    rows.push_back({{"label", r.label}, {"observed", r.observed}, {"calculated", r.calculated}, {"residual", r.residual}});
  return {{"system", f.system},
          {"unit", f.unit},
          {"parameters", {{"d", f.d}, {"g", f.g}}},
          {"initial", {{"d", f.initial[0]}, {"g", f.initial[1]}}},
          {"iterations", f.iterations},
          {"converged", f.converged},
          {"cost", f.cost},
          {"cost_trace", f.cost_trace},
          {"rows", rows}};
}

nlohmann::json to_json(const NucleiFit& f) {
  return {{"parameters", {{"G", f.G}, {"k", f.k}, {"d", f.d}}},
          {"spin_orbit", f.so},
          {"iterations", f.iterations},
          {"converged", f.converged},
          {"residuals", f.residuals},
          {"jacobian_condition", f.jacobian_condition}};
}

nlohmann::json to_json(const K1Fit& f) {
  return {{"parameters", {{"k1", f.k1}}}, {"forward", f.forward}, {"iterations", f.iterations}, {"converged", true}};
}

}  // namespace nf
