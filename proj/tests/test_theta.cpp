#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "abqlab/numeric.hpp"
#include "abqlab/rng.hpp"
#include "abqlab/theta.hpp"

using namespace abq;
using C = std::complex<double>;

namespace {

constexpr double kTail = 1e-13;

double rel_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

// Oracle: the defining series summed over a large box, no reduction.
Eigen::VectorXcd naive_theta(const PeriodMatrix& p, const Eigen::Vector2cd& z, int box) {
  const double pi = std::numbers::pi;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(p.n);
  for (int j = 0; j < p.n; ++j) {
    for (int m1 = -box; m1 <= box; ++m1) {
      for (int m2 = -box; m2 <= box; ++m2) {
        const Eigen::Vector2cd w(m1, m2 + double(j) / p.n);
        const C quad = w.dot(p.omega * w);  // w is real, so dot() is the bilinear form
        out[j] += std::exp(C(0, 1) * pi * quad + C(0, 2) * pi * w.dot(z));
      }
    }
  }
  return out;
}

PeriodMatrix test_matrix(int n = 6) { return sample_period_matrix(n, 42); }

}  // namespace

TEST_CASE("theta values match the naive series near the origin") {
  const auto p = test_matrix();
  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    const Eigen::Vector2cd z(C(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)), C(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)));
    const auto e = theta_basis(p, z, kTail);
    CHECK(rel_diff(e.values, naive_theta(p, z, 12)) < 1e-12);
    CHECK(e.tail_bound <= kTail);
  }
}

TEST_CASE("quasi-periodicity in both lattice directions") {
  for (int n : {5, 6, 10}) {
    const auto p = sample_period_matrix(n, 7 + n);
    Rng rng(derive_seed(3, n));
    for (int t = 0; t < 20; ++t) {
      const auto z = sample_point(p, rng);
      const auto base = theta_basis(p, z, kTail).values;
      const Eigen::Vector2d k(std::floor(rng.uniform(-2, 3)), std::floor(rng.uniform(-2, 3)));
      // D direction: exact periodicity
      const auto d_shift = theta_basis(p, p.lattice_vector(Eigen::Vector2d::Zero(), k) + z, kTail).values;
      CHECK(rel_diff(d_shift, base) < 1e-10);
      // Omega direction: classical factor
      const Eigen::Vector2cd kc = k.cast<C>();
      const C factor = std::exp(C(0, -1) * std::numbers::pi * kc.dot(p.omega * kc) -
                                C(0, 2) * std::numbers::pi * kc.dot(z));
      const auto o_shift = theta_basis(p, z + p.omega * kc, kTail).values;
      CHECK(rel_diff(o_shift, factor * base) < 1e-10);
    }
  }
}

TEST_CASE("parity") {
  const auto p = test_matrix(7);
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto z = sample_point(p, rng);
    const auto plus = theta_basis(p, z, kTail).values;
    const auto minus = theta_basis(p, -z, kTail).values;
    Eigen::VectorXcd reflected(p.n);
    for (int j = 0; j < p.n; ++j) reflected[j] = plus[(p.n - j) % p.n];
    CHECK(rel_diff(minus, reflected) < 1e-10);
  }
}

TEST_CASE("translations by K(L) act through the Heisenberg group") {
  const auto p = test_matrix(6);
  const auto tau = translate_action(p, TorsionPoint::t_tau(), 1, kTail);
  CHECK(tau.map == make_rep(6).tau);
  CHECK(tau.residual < 1e-8);

  const auto x2 = translate_action(p, TorsionPoint::two_torsion(2, 6), 1, kTail);
  for (int j = 0; j < 6; ++j) CHECK(x2.map.exponent[j] == (3 * j) % 6);  // eps^{3j} = (-1)^j

  const auto sig = translate_action(p, TorsionPoint::t_sigma(), 1, kTail);
  CHECK(sig.residual < 1e-8);
  CHECK(std::abs(sig.sigma_direction) == 1);
  const auto sig2 = translate_action(p, TorsionPoint{"2t_sigma", 2, 0}, 1, kTail);
  CHECK(sig2.map == sig.map.power(2));
  CHECK(sig2.residual < 1e-8);

  // the shift is sigma or its inverse, up to the convention found above
  const auto rep = make_rep(6);
  CHECK((sig.map == rep.sigma || sig.map == rep.sigma.inverse()));
}

TEST_CASE("sections are linearly independent") {
  for (int n : {5, 8, 12}) {
    const auto p = sample_period_matrix(n, 100 + n);
    Rng rng(n);
    Eigen::MatrixXcd m(3 * n, n);
    for (int i = 0; i < 3 * n; ++i) m.row(i) = normalized_theta<double>(p, sample_point(p, rng), kTail).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    CHECK(s[n - 1] / s[0] > 1e-8);
  }
}

TEST_CASE("tail targets and precisions agree") {
  const auto p = test_matrix(10);
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto z = sample_point(p, rng);
    const auto fine = normalized_theta<double>(p, z, 1e-13);
    const auto coarse = normalized_theta<double>(p, z, 1e-10);
    CHECK(rel_diff(coarse, fine) < 1e-9);
    const auto ext = normalized_theta<long double>(p, z, 1e-16);
    CHECK(rel_diff(ext.cast<C>(), fine) < 1e-12);
  }
  double bound = 1;
  normalized_theta<double>(p, Eigen::Vector2cd::Zero(), 1e-12, &bound);
  CHECK(bound <= 1e-12);
}

TEST_CASE("truncation planning") {
  const auto plan = plan_truncation(0.5, 1e-13, std::numeric_limits<double>::epsilon());
  CHECK(plan.bound <= 1e-13);
  CHECK(plan.radius <= 6);
  CHECK(plan_truncation(2.0, 1e-13, 1e-16).radius < plan.radius);
  CHECK_THROWS_AS(plan_truncation(1.0, 1e-17, std::numeric_limits<double>::epsilon()), TailCertificationError);
  try {
    plan_truncation(1.0, 1e-17, std::numeric_limits<double>::epsilon());
  } catch (const TailCertificationError& e) {
    CHECK(e.achieved() > 1e-17);
  }
  CHECK_THROWS_AS(plan_truncation(1.0, 0.0, 1e-16), std::invalid_argument);
}

TEST_CASE("period matrix sampling") {
  const auto a = sample_period_matrix(10, 5);
  const auto b = sample_period_matrix(10, 5);
  CHECK(a.omega == b.omega);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = sample_period_matrix(8, seed);
    CHECK(p.lambda_min >= 0.999);
    CHECK(p.omega(0, 1) == p.omega(1, 0));
    CHECK(std::abs(p.omega(0, 0).real()) < 0.5);
    const auto q = sample_period_matrix(8, seed + 1000);
    for (int i = 0; i < 4; ++i) CHECK(p.omega(i) != q.omega(i));
  }
  CHECK_THROWS(sample_period_matrix(4, 1));
}

TEST_CASE("period matrix files") {
  PeriodMatrixFile f{sample_period_matrix(8, 77), 77};
  const auto back = parse_period_matrix(format_period_matrix(f));
  CHECK(back.matrix.omega == f.matrix.omega);
  CHECK(back.matrix.n == 8);
  CHECK(back.seed == std::optional<std::uint64_t>(77));

  CHECK_THROWS_AS(parse_period_matrix("n = 8\nomega = 0 1 0.1 0 0.2 0 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period_matrix("n = 8\nomega = 0 1 0 0 0 0 0 -1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period_matrix("n = 8\nomega = 0 1 0 0 0 0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period_matrix("omega = 0 1 0 0 0 0 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_period_matrix("n = 8\nomega = 0 1 0 0 0 0 0 1\nbogus\n"), std::invalid_argument);
  const auto ok = parse_period_matrix("# comment\nn = 6\nomega = 0 1 0 0.2 0 0.2 0 1.5\n");
  CHECK_FALSE(ok.seed.has_value());
  CHECK(ok.matrix.omega(0, 1) == C(0, 0.2));
}
