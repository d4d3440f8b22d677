#include "abqlab/theta.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "abqlab/numeric.hpp"
#include "abqlab/rng.hpp"

namespace abq {

std::string to_string(Precision p) { return p == Precision::Double ? "double" : "extended"; }

std::optional<Precision> parse_precision(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "extended") return Precision::Extended;
  return std::nullopt;
}

PeriodMatrix PeriodMatrix::create(int n, const Eigen::Matrix2cd& omega) {
  if (n < 2) throw std::invalid_argument("PeriodMatrix: n must be >= 2");
  if (omega(0, 1) != omega(1, 0)) throw std::invalid_argument("PeriodMatrix: omega is not symmetric");
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(omega(i).real()) || !std::isfinite(omega(i).imag())) {
      throw std::invalid_argument("PeriodMatrix: non-finite entry");
    }
  }
  const Eigen::Matrix2d y = omega.imag();
  const double tr = y.trace();
  const double det = y.determinant();
  const double lambda = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4 * det)));
  if (!(lambda >= 0.5)) {
    throw std::invalid_argument("PeriodMatrix: Im(omega) must have eigenvalues >= 0.5, got " +
                                std::to_string(lambda));
  }
  PeriodMatrix p;
  p.n = n;
  p.omega = omega;
  p.lambda_min = lambda;
  return p;
}

Eigen::Vector2cd PeriodMatrix::lattice_vector(const Eigen::Vector2d& a, const Eigen::Vector2d& b) const {
  Eigen::Vector2cd out = omega * a.cast<std::complex<double>>();
  out[0] += b[0];
  out[1] += b[1] * n;
  return out;
}

PeriodMatrix sample_period_matrix(int n, std::uint64_t seed) {
  if (n < 5) throw std::invalid_argument("sample_period_matrix: n must be >= 5");
  Rng rng(derive_seed(seed, 0x0e6a));
  const double angle = rng.uniform(0, std::numbers::pi);
  const double e1 = rng.uniform(1, 2);
  const double e2 = rng.uniform(1, 2);
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Eigen::Matrix2d pos = rot * Eigen::Vector2d(e1, e2).asDiagonal() * rot.transpose();
  pos(1, 0) = pos(0, 1);
  Eigen::Matrix2d sym;
  sym(0, 0) = rng.uniform(-0.5, 0.5);
  sym(0, 1) = sym(1, 0) = rng.uniform(-0.5, 0.5);
  sym(1, 1) = rng.uniform(-0.5, 0.5);
  Eigen::Matrix2cd omega;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) omega(i, j) = {sym(i, j), pos(i, j)};
  }
  return PeriodMatrix::create(n, omega);
}

TailPlan plan_truncation(double lambda_min, double target_tail, double epsilon) {
  if (!(target_tail > 0)) throw std::invalid_argument("theta: target_tail must be > 0");
  const double floor = 16 * epsilon;
  if (target_tail < floor) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "theta: target tail %g is below the working precision %g", target_tail, floor);
    throw TailCertificationError(msg,
                                 floor);
  }
  // Points of a shifted unit lattice at distance in [s, s+1) from any centre
  // number at most pi ((s + 1 + 1/sqrt2)^2 - max(0, s - 1/sqrt2)^2).
  auto tail = [&](double radius) {
    const double h = std::numbers::sqrt2 / 2;
    double sum = 0;
    for (int t = 0; t < 400; ++t) {
      const double s = radius + t;
      const double inner = std::max(0.0, s - h);
      const double count = std::numbers::pi * ((s + 1 + h) * (s + 1 + h) - inner * inner);
      const double term = count * std::exp(-std::numbers::pi * lambda_min * s * s);
      sum += term;
      if (term < 1e-40 * sum || term == 0) break;
    }
    return sum;
  };
  double bound = 0;
  for (double r = 0.5; r <= 64; r += 0.25) {
    bound = tail(r);
    if (bound <= target_tail) return {r, bound};
  }
  throw TailCertificationError("theta: cannot certify tail bound " + std::to_string(target_tail), bound);
}

namespace {

template <class Real>
struct ReducedSeries {
  VectorXc<Real> values;  // theta_j at the reduced point
  std::complex<Real> log_factor;
  Real log_peak = 0;
  TailPlan plan;
};

template <class Real>
ReducedSeries<Real> reduced_series(const PeriodMatrix& p, const Eigen::Vector2cd& z, double target_tail) {
  using C = std::complex<Real>;
  using M2 = Eigen::Matrix<Real, 2, 2>;
  using V2 = Eigen::Matrix<Real, 2, 1>;
  using V2c = Eigen::Matrix<C, 2, 1>;
  const Real pi = std::numbers::pi_v<Real>;
  const int n = p.n;

  Eigen::Matrix<C, 2, 2> omega = p.omega.cast<C>();
  const M2 x_mat = omega.real();
  const M2 y_mat = omega.imag();
  V2c zz = z.cast<C>();

  // z = Omega y + D x with real x, y
  const V2 y = y_mat.inverse() * zz.imag();
  V2 x = zz.real() - x_mat * y;
  x[1] /= static_cast<Real>(n);
  const V2 k(std::floor(y[0]), std::floor(y[1]));
  const V2 l(std::floor(x[0]), std::floor(x[1]));
  V2c zr = zz - omega * k.template cast<C>();
  zr[0] -= l[0];
  zr[1] -= l[1] * static_cast<Real>(n);
  const V2 yr = y - k;

  ReducedSeries<Real> out;
  out.plan = plan_truncation(p.lambda_min, target_tail, std::numeric_limits<Real>::epsilon());
  out.log_peak = pi * yr.dot(y_mat * yr);
  const C kok = k.template cast<C>().dot(omega * k.template cast<C>());
  const C kz = k.template cast<C>().dot(zr);
  out.log_factor = C(0, -1) * pi * kok - C(0, 2) * pi * kz;

  const Real radius = static_cast<Real>(out.plan.radius);
  const V2 centre = -yr;
  out.values = VectorXc<Real>::Zero(n);
  const long m1_lo = static_cast<long>(std::ceil(centre[0] - radius));
  const long m1_hi = static_cast<long>(std::floor(centre[0] + radius));
  for (int j = 0; j < n; ++j) {
    const Real a = static_cast<Real>(j) / static_cast<Real>(n);
    const long m2_lo = static_cast<long>(std::ceil(centre[1] - radius - a));
    const long m2_hi = static_cast<long>(std::floor(centre[1] + radius - a));
    C sum(0, 0);
    for (long m1 = m1_lo; m1 <= m1_hi; ++m1) {
      for (long m2 = m2_lo; m2 <= m2_hi; ++m2) {
        const V2 w(static_cast<Real>(m1), static_cast<Real>(m2) + a);
        const V2 off = w - centre;
        if (off.squaredNorm() > radius * radius) continue;
        const C quad = w[0] * w[0] * omega(0, 0) + 2 * w[0] * w[1] * omega(0, 1) + w[1] * w[1] * omega(1, 1);
        const C lin = w[0] * zr[0] + w[1] * zr[1];
        const C expo = C(0, 1) * pi * quad + C(0, 2) * pi * lin;
        sum += std::exp(expo);
      }
    }
    out.values[j] = sum;
  }
  return out;
}

}  // namespace

ThetaEvaluation theta_basis(const PeriodMatrix& p, const Eigen::Vector2cd& z, double target_tail) {
  const auto s = reduced_series<double>(p, z, target_tail);
  ThetaEvaluation e;
  e.z = z;
  e.values = std::exp(s.log_factor) * s.values;
  e.tail_bound = s.plan.bound;
  e.scale = std::exp(s.log_peak + s.log_factor.real());
  e.radius = s.plan.radius;
  return e;
}

template <class Real>
VectorXc<Real> normalized_theta(const PeriodMatrix& p, const Eigen::Vector2cd& z, double target_tail,
                                double* tail_bound) {
  auto s = reduced_series<Real>(p, z, target_tail);
  Real top = 0;
  for (Eigen::Index j = 0; j < s.values.size(); ++j) top = std::max(top, std::abs(s.values[j]));
  if (tail_bound) *tail_bound = s.plan.bound;
  if (top == 0) return s.values;
  return s.values / top;
}

template VectorXc<double> normalized_theta<double>(const PeriodMatrix&, const Eigen::Vector2cd&, double,
                                                   double*);
template VectorXc<long double> normalized_theta<long double>(const PeriodMatrix&, const Eigen::Vector2cd&,
                                                             double, double*);

TorsionPoint TorsionPoint::two_torsion(int i, int n) {
  if (n % 2 != 0) throw std::invalid_argument("two_torsion: n must be even");
  const int d = n / 2;
  switch (i) {
    case 1: return {"x1", d, 0};
    case 2: return {"x2", 0, d};
    case 3: return {"x3", d, d};
  }
  throw std::invalid_argument("two_torsion: index must be 1, 2 or 3");
}

Eigen::Vector2cd TorsionPoint::coords(const PeriodMatrix& p) const {
  const Eigen::Vector2d a(0.0, static_cast<double>(sigma_steps) / p.n);
  const Eigen::Vector2d b(0.0, static_cast<double>(tau_steps) / p.n);
  return p.lattice_vector(a, b);
}

namespace {

MonomialMap translation_map(int n, const TorsionPoint& t, int direction) {
  MonomialMap m;
  m.n = n;
  m.target.resize(n);
  m.exponent.resize(n);
  for (int j = 0; j < n; ++j) {
    m.target[j] = (((j + direction * t.sigma_steps) % n) + n) % n;
    m.exponent[j] = static_cast<int>((static_cast<long>(t.tau_steps) * j % n + n) % n);
  }
  return m;
}

}  // namespace

int detect_sigma_direction(const PeriodMatrix& p, std::uint64_t seed, double target_tail, double* residual,
                           int checks) {
  Rng rng(derive_seed(seed, 0xd1ec));
  const auto shift = TorsionPoint::t_sigma().coords(p);
  double worst[2] = {0, 0};
  const int dirs[2] = {1, -1};
  for (int c = 0; c < checks; ++c) {
    const auto z = sample_point(p, rng);
    const auto u = normalized_theta<double>(p, z, target_tail);
    const auto w = normalized_theta<double>(p, z + shift, target_tail);
    for (int k = 0; k < 2; ++k) {
      const auto m = translation_map(p.n, TorsionPoint::t_sigma(), dirs[k]);
      worst[k] = std::max(worst[k], projective_residual(m.apply(u), w));
    }
  }
  const int best = worst[0] <= worst[1] ? 0 : 1;
  if (residual) *residual = worst[best];
  if (!(worst[best] < 1e-6)) {
    throw std::runtime_error("detect_sigma_direction: no consistent shift direction (residual " +
                             std::to_string(worst[best]) + ")");
  }
  return dirs[best];
}

TranslationAction translate_action(const PeriodMatrix& p, const TorsionPoint& point, std::uint64_t seed,
                                   double target_tail, int checks) {
  TranslationAction out;
  out.point = point;
  out.sigma_direction = detect_sigma_direction(p, seed, target_tail, nullptr, checks);
  out.map = translation_map(p.n, point, out.sigma_direction);

  Rng rng(derive_seed(seed, 0x7a11));
  const auto shift = point.coords(p);
  for (int c = 0; c < checks; ++c) {
    const auto z = sample_point(p, rng);
    const auto u = normalized_theta<double>(p, z, target_tail);
    const auto w = normalized_theta<double>(p, z + shift, target_tail);
    out.residual = std::max(out.residual, projective_residual(out.map.apply(u), w));
  }
  if (!(out.residual < 1e-6)) {
    throw std::runtime_error("translate_action: " + point.label + " fails equivariance (residual " +
                             std::to_string(out.residual) + ")");
  }
  return out;
}

std::string format_period_matrix(const PeriodMatrixFile& f) {
  std::ostringstream out;
  out.precision(17);
  out << "# abqlab period matrix\n";
  out << "n = " << f.matrix.n << "\n";
  out << "omega =";
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out << " " << f.matrix.omega(i, j).real() << " " << f.matrix.omega(i, j).imag();
  }
  out << "\n";
  if (f.seed) out << "seed = " << *f.seed << "\n";
  return out.str();
}

PeriodMatrixFile parse_period_matrix(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw std::invalid_argument("period matrix: malformed line '" + line + "'");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.count("n") || !kv.count("omega")) throw std::invalid_argument("period matrix: need n and omega");
  PeriodMatrixFile f;
  const int n = std::stoi(kv["n"]);
  std::istringstream om(kv["omega"]);
  double v[8];
  for (double& x : v) {
    if (!(om >> x)) throw std::invalid_argument("period matrix: omega needs 8 numbers");
  }
  std::string extra;
  if (om >> extra) throw std::invalid_argument("period matrix: omega has more than 8 numbers");
  Eigen::Matrix2cd omega;
  omega << std::complex<double>(v[0], v[1]), std::complex<double>(v[2], v[3]),
      std::complex<double>(v[4], v[5]), std::complex<double>(v[6], v[7]);
  f.matrix = PeriodMatrix::create(n, omega);
  if (kv.count("seed")) f.seed = std::stoull(kv["seed"]);
  return f;
}

PeriodMatrixFile read_period_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open period matrix file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_period_matrix(buf.str());
}

void write_period_matrix(const std::string& path, const PeriodMatrixFile& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write period matrix file " + path);
  out << format_period_matrix(f);
}

}  // namespace abq
