#include <doctest.h>

#include "abqlab/quadric_lab.hpp"
#include "abqlab/rng.hpp"
#include "abqlab/sym2_decomp.hpp"

using namespace abq;

namespace {

LabConfig config(int n, std::uint64_t seed = 1) {
  LabConfig c;
  c.samples = 2 * n * (n + 1);
  c.seed = seed;
  return c;
}

// Oracle: evaluate every quadric directly as sum c_ij v_i v_j on fresh points.
double direct_residual(const QuadricSpace& s, const PeriodMatrix& p, std::uint64_t seed) {
  const MonomialBasis mb(p.n);
  Rng rng(seed);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const auto v = normalized_theta<double>(p, sample_point(p, rng), 1e-13);
    for (Eigen::Index r = 0; r < s.basis.rows(); ++r) {
      std::complex<double> acc = 0;
      for (int idx = 0; idx < mb.size(); ++idx) {
        const auto [i, j] = mb.monomial(idx);
        acc += s.basis(r, idx) * v[i] * v[j];
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("kernel dimensions for small n") {
  for (auto [n, k] : {std::pair{5, 0}, {6, 0}, {7, 0}, {8, 4}}) {
    CAPTURE(n);
    const auto p = sample_period_matrix(n, 3);
    const auto s = vanishing_quadrics(p, config(n));
    CHECK(s.dimension() == k);
    CHECK(s.rank.gap_ratio >= 1e4);
    if (k > 0) {
      CHECK(s.verification_residual < 1e-8);
      CHECK(direct_residual(s, p, 99) < 1e-8);
      const Eigen::MatrixXcd gram = s.basis * s.basis.adjoint();
      CHECK((gram - Eigen::MatrixXcd::Identity(k, k)).norm() < 1e-12);
    }
  }
}

TEST_CASE("kernel is Heisenberg invariant and splits as predicted at n = 8") {
  const auto p = sample_period_matrix(8, 11);
  const auto cfg = config(8, 11);
  const auto s = vanishing_quadrics(p, cfg);
  REQUIRE(s.dimension() == 4);
  const auto rep = analyze(s, p, cfg);
  CHECK(rep.heisenberg_residual < 1e-8);
  CHECK(rep.isotypic == std::vector<int>{4, 0, 0, 0});
  REQUIRE(rep.torsion.size() == 3);
  for (const auto& t : rep.torsion) {
    CHECK(t.k_b == 0);
    CHECK(t.k_h == 4);
    CHECK(t.scroll_residual == 0);  // nothing to test when the base part is empty
  }
  // empty intersections stay empty rather than picking up rounding noise
  for (int i = 1; i <= 3; ++i) {
    const auto act = translate_action(p, TorsionPoint::two_torsion(i, 8), 5, 1e-13);
    const auto parts = torsion_parts(s, act, cfg.subspace_threshold());
    CHECK(parts.base.rows() == 0);
    CHECK(parts.harmonic.rows() == 4);
  }
}

TEST_CASE("scroll containment at n = 10") {
  const auto p = sample_period_matrix(10, 2);
  const auto cfg = config(10, 2);
  const auto s = vanishing_quadrics(p, cfg);
  REQUIRE(s.dimension() == 15);
  for (int i = 1; i <= 3; ++i) {
    const auto act = translate_action(p, TorsionPoint::two_torsion(i, 10), 5, 1e-13);
    const auto parts = torsion_parts(s, act, cfg.subspace_threshold());
    CHECK(parts.base.rows() == 5);
    CHECK(parts.harmonic.rows() == 10);
    const double base = scroll_check(parts.base, p, act, 100, 17, 1e-13);
    const double harm = scroll_check(parts.harmonic, p, act, 100, 17, 1e-13);
    CHECK(base < 1e-8);
    // harmonic members of the ideal do not contain the scroll
    CHECK(harm > 1e3 * base);
    // the endpoint alpha = 1, beta = 0 lies on the surface
    const double endpoint = scroll_check(s.basis, p, act, 20, 3, 1e-13, std::array<std::complex<double>, 2>{1.0, 0.0});
    CHECK(endpoint < 1e-8);
  }
}

TEST_CASE("rank certification failures are reported") {
  const auto p = sample_period_matrix(8, 1);
  auto cfg = config(8);
  cfg.samples = 10;
  CHECK_THROWS_AS(vanishing_quadrics(p, cfg), std::invalid_argument);

  cfg = config(8);
  cfg.gap_threshold = 1e30;
  CHECK_THROWS_AS(vanishing_quadrics(p, cfg), IndeterminateRankError);

  cfg = config(8);
  cfg.tolerance = 1e-30;  // no cut qualifies, and full rank is not supported by the spectrum
  try {
    vanishing_quadrics(p, cfg);
    FAIL("expected an indeterminate rank");
  } catch (const IndeterminateRankError& e) {
    CHECK(e.decision().gap_ratio < 1e4);
  }
}

TEST_CASE("verification runs are deterministic and honour a fixed period matrix") {
  const auto cfg = config(8, 21);
  const auto a = run_verification(8, cfg);
  const auto b = run_verification(8, cfg);
  CHECK(a.report.k == b.report.k);
  CHECK(a.report.gap_ratio == b.report.gap_ratio);
  CHECK(a.report.scroll_residual == b.report.scroll_residual);
  CHECK(a.report.omega == b.report.omega);

  const auto fixed = sample_period_matrix(8, 500);
  const auto c = run_verification(8, cfg, fixed);
  CHECK(c.report.omega_seed == 0);
  CHECK(c.report.retries == 0);
  CHECK(c.matrix.omega == fixed.omega);
  CHECK_THROWS(run_verification(10, cfg, fixed));
}

TEST_CASE("a product surface is caught as an expectation failure, not resampled") {
  Eigen::Matrix2cd omega;
  omega << std::complex<double>(0, 1), 0, 0, std::complex<double>(0, 1.5);
  const auto p = PeriodMatrix::create(8, omega);
  const auto run = run_verification(8, config(8), p);
  CHECK(run.report.k != 4);
  CHECK(run.report.retries == 0);
}

TEST_CASE("extended precision reproduces the double result") {
  auto cfg = config(8, 4);
  cfg.precision = Precision::Extended;
  cfg.target_tail = 1e-16;
  const auto p = sample_period_matrix(8, 4);
  const auto s = vanishing_quadrics(p, cfg);
  CHECK(s.dimension() == 4);
  CHECK(s.rank.gap_ratio >= 1e4);
}
