#include "nonfield/atomic.hpp"

#include <cmath>
#include <string>

#include "nonfield/errors.hpp"

namespace nf {

namespace {

constexpr const char* kLetters = "spdfghiklmnoqrtuvwxy";

bool finite_all(std::initializer_list<double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void AtomicModelParams::validate() const {
  if (!finite_all({alpha, mass, Z, d, g, vacuum_offset})) throw InvalidArgument("atomic parameters must be finite");
  if (alpha <= 0) throw InvalidArgument("alpha must be positive");
  if (mass <= 0) throw InvalidArgument("mass must be positive");
  if (Z < 0) throw InvalidArgument("Z must be non-negative");
}

AtomicModelParams he2_params() {
  AtomicModelParams p;
  p.mass = 0.510928873e6;
  p.Z = 2;
  p.d = 0.05634;
  p.g = 0.1487;
  return p;
}

AtomicModelParams hydrogen_params() {
  AtomicModelParams p;
  p.mass = 0.5107207446e6;
  p.Z = 1;
  p.d = 0.0731;
  p.g = 0.20193;
  return p;
}

char orbital_letter(int l) {
  if (l < 0 || l >= 20) throw InvalidArgument("orbital momentum outside the labelled range 0..19");
  return kLetters[l];
}

int orbital_from_letter(char c) {
  for (int i = 0; kLetters[i]; ++i)
    if (kLetters[i] == c) return i;
  throw ParseError(std::string("unknown orbital letter '") + c + "'");
}

std::string state_label(int n, int l, int two_j) {
  return std::to_string(n) + orbital_letter(l) + std::to_string(two_j) + "/2";
}

const char* series_name(Series s) {
  switch (s) {
    case Series::N0_plus: return "N0_plus";
    case Series::N1_plus: return "N1_plus";
    case Series::N1_minus: return "N1_minus";
  }
  return "?";
}

Series QuantumState::series() const {
  if (N == 0) return Series::N0_plus;
  return plus() ? Series::N1_plus : Series::N1_minus;
}

void QuantumState::validate() const {
  if (N < 0 || l < 0) throw InvalidArgument("N and l must be non-negative");
  if (two_j < 1 || two_j % 2 == 0) throw InvalidArgument("two_j must be a positive odd integer");
  if (two_j != 2 * l + 1 && two_j != 2 * l - 1) throw InvalidArgument("two_j must be 2l+1 or 2l-1");
}

QuantumState QuantumState::make(int N, int l, int two_j) {
  QuantumState s{N, l, two_j, {}};
  s.validate();
  s.label = l < 20 ? state_label(s.principal(), l, two_j) : std::string();
  return s;
}

QuantumState QuantumState::parse(const std::string& label) {
  size_t i = 0;
  while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
  if (i == 0 || i + 1 >= label.size()) throw ParseError("bad state label '" + label + "'");
  int n = std::stoi(label.substr(0, i));
  int l = orbital_from_letter(label[i]);
  std::string rest = label.substr(i + 1);
  if (rest.size() < 3 || rest.substr(rest.size() - 2) != "/2") throw ParseError("bad state label '" + label + "'");
  int two_j = std::stoi(rest.substr(0, rest.size() - 2));
  // n = N + j + 1/2
  int N = n - (two_j + 1) / 2;
  if (N < 0) throw ParseError("state label '" + label + "' implies a negative knot count");
  QuantumState s = make(N, l, two_j);
  return s;
}

double b_coefficient(const AtomicModelParams& p, const QuantumState& s) {
  p.validate();
  s.validate();
  const double x = std::pow(p.alpha * p.Z, 2);
  const double l = s.l;
  if (s.plus()) {
    const double c2 = 2 * l + 2;
    // the d^2/(2l+1)^3 part of the x^2 coefficient is withheld, as in the fit
    return l + x * (-1.0 / c2 + p.d / (2 * l + 1)) - x * x / (c2 * c2 * c2);
  }
  if (s.l == 0) throw InvalidArgument("j=l-1/2 requires l >= 1");
  return l - 1 + x * (-1.0 / (2 * l) + p.d / (2 * l + 1)) - x * x / (8 * l * l * l);
}

double effective_mass_factor(const AtomicModelParams& p, double n_ef) {
  const double x = std::pow(p.alpha * p.Z, 2);
  const double rad = n_ef * n_ef - p.g * x;
  if (!(rad > 0)) throw DomainError("mass-interaction radicand is not positive (unphysical g)");
  if (p.g == 0) return 1.0;
  return n_ef / std::sqrt(rad);
}

double binding_energy(const AtomicModelParams& p, const QuantumState& s) {
  const double n_ef = b_coefficient(p, s) + s.N + 1;
  const double x = std::pow(p.alpha * p.Z, 2);
  if (x == 0) return 0.0;
  const double factor = effective_mass_factor(p, n_ef);
  // 1 - n/sqrt(n^2+x) without cancellation
  const double r = std::sqrt(n_ef * n_ef + x);
  return p.mass * factor * x / (r * (r + n_ef));
}

std::array<double, 2> binding_gradient(const AtomicModelParams& p, const QuantumState& s) {
  const double n = b_coefficient(p, s) + s.N + 1;
  const double x = std::pow(p.alpha * p.Z, 2);
  const double rad = n * n - p.g * x;
  if (!(rad > 0)) throw DomainError("mass-interaction radicand is not positive (unphysical g)");
  const double r = std::sqrt(n * n + x);
  const double G = x / (r * (r + n));
  const double dG_dn = -x / (r * r * r);
  const double F = n / std::sqrt(rad);
  const double dF_dn = -p.g * x / (rad * std::sqrt(rad));
  const double dF_dg = 0.5 * n * x / (rad * std::sqrt(rad));
  const double dn_dd = x / (2.0 * s.l + 1);
  return {p.mass * (dF_dn * G + F * dG_dn) * dn_dd, p.mass * dF_dg * G};
}

double transition_energy(const AtomicModelParams& p, const QuantumState& s) {
  static const QuantumState ground = QuantumState::make(0, 0, 1);
  if (s.N == 0 && s.l == 0 && s.two_j == 1) return 0.0;
  return binding_energy(p, ground) - binding_energy(p, s);
}

std::vector<QuantumState> spectrum_states(int n_max) {
  std::vector<QuantumState> out;
  for (int n = 2; n <= n_max; ++n) {
    const int l1 = n - 2;
    out.push_back(QuantumState::make(1, l1, 2 * l1 + 1));
    out.push_back(QuantumState::make(1, n - 1, 2 * (n - 1) - 1));
    out.push_back(QuantumState::make(0, n - 1, 2 * (n - 1) + 1));
  }
  return out;
}

LiModelParams li_params_s() {
  LiModelParams p;
  p.a = 0.1421;
  p.b = -0.1375;
  p.g = -10.255;
  return p;
}

LiModelParams li_params_nonzero() {
  LiModelParams p;
  p.a = 0.3083;
  p.b = 0.02697;
  p.g = 7.72;
  return p;
}

LiModelParams li_params_for(int l) { return l == 0 ? li_params_s() : li_params_nonzero(); }

LiLevel li_level(const LiModelParams& p, int n, int l, bool plus_branch) {
  if (n < 2 || l < 0 || l >= n) throw InvalidArgument("Li level needs n >= 2 and 0 <= l < n");
  if (!(p.limit_energy > 0) || !(p.mass > 0) || !(p.alpha > 0)) throw InvalidArgument("Li parameters must be positive");
  const double a2 = p.alpha * p.alpha;
  const double lh = (l + 0.5) * (l + 0.5);
  auto root = [](double r, const char* what) {
    if (r < 0) throw DomainError(std::string("negative radicand in ") + what);
    return std::sqrt(r);
  };
  const double B0 = -0.5 + root(lh - p.a, "B0");
  const double D0 = 0.5 * (1 - root(1 - 8 * p.b, "D0"));
  const double n0 = n + B0 - l + D0;
  const double damp = 1 - a2 / (2 * n0 * n0);
  const double B = -0.5 + root(lh - 9 * a2 - p.a * damp, "B");
  const double rD = root(1 - 16 * a2 - 8 * p.b * damp, "D");
  const double D = plus_branch ? 0.5 + 0.5 * rD : 0.5 - 0.5 * rD;
  const double n_ef = n + B - l + D;
  const double m_ef = p.mass * n_ef / root(n_ef * n_ef + p.g * p.alpha, "effective mass");
  const double r = std::sqrt(n_ef * n_ef + a2);
  const double eps = m_ef * a2 / (r * (r + n_ef));
  return {eps, p.limit_energy - eps};
}

double lamb_shift_estimate(double d, double u0, int Z, double mass) {
  if (std::fabs(u0) > 1) throw InvalidArgument("|u0| must not exceed 1");
  return -u0 * d * std::pow(Z, 4) * mass / 12.0;
}

double heI_estimate(int l, double du0, double alpha, double mass) {
  if (l < 0) throw InvalidArgument("l must be non-negative");
  const double r = (l + 0.5) * (l + 0.5) - du0;
  if (!(r > 0)) throw DomainError("negative radicand in the He I estimate");
  const double br = 0.5 + std::sqrt(r);
  return mass * alpha * alpha / 2 / (br * br);
}

double heI_du0_from_binding(double energy, int l, double alpha, double mass) {
  if (!(energy > 0)) throw InvalidArgument("energy must be positive");
  const double br = std::sqrt(mass * alpha * alpha / 2 / energy);
  const double s = br - 0.5;
  if (s <= 0) throw DomainError("binding energy too large for a real du0");
  return (l + 0.5) * (l + 0.5) - s * s;
}

std::array<double, 4> ansatz_residuals(const AnsatzSolution& sol, const AtomicModelParams& params) {
  if (static_cast<int>(sol.roots.size()) != sol.N) throw InvalidArgument("roots must have length N");
  const double m = params.mass;
  const double Z = sol.Z_eff;
  const double D = sol.D, B = sol.B, E = sol.E, W = sol.W, N = sol.N, a = sol.a_scale;
  double s1 = 0, s2r = 0;
  for (double r : sol.roots) {
    s1 += r;
    s2r += r * r;
  }
  const double l = sol.l;
  const double zw = W != 0 ? Z / W : 0.0;
  std::array<double, 4> r{};
  r[0] = D * D - (m * m - E * E);
  r[1] = D * (N + B + 1) + E * Z;
  r[2] = B * B + B + D * (zw + 2 * s1) + 2 * B * N + N * N + N - (l * (l + 1) - Z * Z - Z * E * a * sol.s2);
  r[3] = D * (zw * (a * sol.s2 - zw) + 2 * s2r) + 2 * (B + N) * s1 + (B + N + sol.f) * zw -
         (-Z * Z * a * sol.s2 - Z * E * sol.s3 * a * a / 3.0);
  return r;
}

std::array<double, 2> degeneracy_exponents() { return {0.0, 2.0}; }

}  // namespace nf
