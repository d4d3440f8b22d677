#include "abqlab/quadric_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "abqlab/dimension_bounds.hpp"
#include "abqlab/rng.hpp"
#include "abqlab/sym2_decomp.hpp"

namespace abq {

namespace {

constexpr std::uint64_t kSampleStream = 0x5a3e;
constexpr std::uint64_t kFreshStream = 0xf7e5;
constexpr std::uint64_t kActionStream = 0xac70;
constexpr std::uint64_t kScrollStream = 0x5c70;

template <class Real>
using MatrixXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
QuadricSpace kernel_from_samples(const PeriodMatrix& p, const LabConfig& cfg) {
  const int n = p.n;
  const MonomialBasis mb(n);
  const int w = mb.size();
  const int rows = cfg.sample_count(n);

  // Points are drawn sequentially so the matrix depends only on the seed.
  Rng rng(derive_seed(cfg.seed, kSampleStream));
  std::vector<Eigen::Vector2cd> points;
  points.reserve(rows);
  for (int r = 0; r < rows; ++r) points.push_back(sample_point(p, rng));

  MatrixXc<Real> m(rows, w);
  for (int r = 0; r < rows; ++r) {
    const auto v = normalized_theta<Real>(p, points[r], cfg.target_tail);
    for (int idx = 0; idx < w; ++idx) {
      const auto [i, j] = mb.monomial(idx);
      m(r, idx) = v[i] * v[j];
    }
  }

  Eigen::JacobiSVD<MatrixXc<Real>> svd(m, Eigen::ComputeFullV);
  std::vector<double> sv;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    sv.push_back(static_cast<double>(svd.singularValues()[i]));
  }
  QuadricSpace space;
  space.n = n;
  space.samples = rows;
  space.rank = decide_rank(sv, w, cfg.tolerance, static_cast<double>(std::numeric_limits<Real>::epsilon()));
  if (space.rank.gap_ratio < cfg.gap_threshold) {
    throw IndeterminateRankError("indeterminate rank: gap ratio " + std::to_string(space.rank.gap_ratio) +
                                     " below " + std::to_string(cfg.gap_threshold),
                                 space.rank);
  }
  const int k = space.rank.kernel_dimension();
  const MatrixXc<Real> kernel = svd.matrixV().rightCols(k);
  space.basis = kernel.transpose().template cast<std::complex<double>>();
  return space;
}

// Tail target for double-valued evaluations; extended runs may ask for less than double can certify.
double double_tail(const LabConfig& cfg) {
  return std::max(cfg.target_tail, 16 * std::numeric_limits<double>::epsilon());
}

void reverify(QuadricSpace& space, const PeriodMatrix& p, const LabConfig& cfg) {
  const int count = cfg.verify_samples > 0 ? cfg.verify_samples : sym2_dimension(p.n);
  Rng rng(derive_seed(cfg.seed, kFreshStream));
  double worst = 0;
  for (int c = 0; c < count; ++c) {
    const auto z = sample_point(p, rng);
    const auto v = normalized_theta<double>(p, z, double_tail(cfg));
    for (Eigen::Index q = 0; q < space.basis.rows(); ++q) {
      worst = std::max(worst, std::abs(evaluate_quadric(space.basis.row(q), v)));
    }
  }
  space.verification_residual = worst;
  if (!(worst < cfg.verify_threshold)) {
    throw VerificationError("kernel re-verification failed: residual " + std::to_string(worst), worst);
  }
}

Eigen::MatrixXcd rows_to_columns(const Eigen::MatrixXcd& rows) { return rows.transpose(); }

std::string family_list(int n, const std::vector<std::vector<int>>& space) {
  const auto fam = families(n);
  std::string out;
  for (int f : contained_families(n, space)) {
    if (!out.empty()) out += "+";
    out += fam[f].name();
  }
  return out.empty() ? "-" : out;
}

std::string involution_label(const MonomialMap& map) {
  const auto rep = make_rep(map.n);
  for (auto label : {TorsionLabel::Sigma, TorsionLabel::Tau, TorsionLabel::SigmaTau}) {
    const auto g = torsion_involution(rep, label);
    if (map.compose(g.inverse()).is_scalar()) return to_string(label);
  }
  return "?";
}

}  // namespace

int LabConfig::sample_count(int n) const { return samples > 0 ? samples : 4 * sym2_dimension(n); }

std::complex<double> evaluate_quadric(const Eigen::RowVectorXcd& q, const Eigen::VectorXcd& v) {
  const int n = static_cast<int>(v.size());
  const MonomialBasis mb(n);
  std::complex<double> acc = 0;
  for (int idx = 0; idx < mb.size(); ++idx) {
    const auto [i, j] = mb.monomial(idx);
    acc += q[idx] * v[i] * v[j];
  }
  return acc;
}

QuadricSpace vanishing_quadrics(const PeriodMatrix& p, const LabConfig& cfg) {
  const int w = sym2_dimension(p.n);
  if (cfg.sample_count(p.n) < 2 * w) {
    throw std::invalid_argument("vanishing_quadrics: need at least " + std::to_string(2 * w) + " samples");
  }
  QuadricSpace space = cfg.precision == Precision::Extended ? kernel_from_samples<long double>(p, cfg)
                                                            : kernel_from_samples<double>(p, cfg);
  reverify(space, p, cfg);
  return space;
}

double scroll_check(const Eigen::MatrixXcd& quadrics, const PeriodMatrix& p, const TranslationAction& action,
                    int trials, std::uint64_t seed, double target_tail,
                    std::optional<std::array<std::complex<double>, 2>> coefficients) {
  if (quadrics.rows() == 0) return 0;
  Rng rng(derive_seed(seed, kScrollStream));
  const auto shift = action.point.coords(p);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    const auto z = sample_point(p, rng);
    std::complex<double> alpha(rng.uniform(-1, 1), rng.uniform(-1, 1));
    std::complex<double> beta(rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (coefficients) {
      alpha = (*coefficients)[0];
      beta = (*coefficients)[1];
    }
    const auto u = normalized_theta<double>(p, z, target_tail);
    auto w = normalized_theta<double>(p, z + shift, target_tail);
    const Eigen::VectorXcd image = action.map.apply(u);
    w *= w.dot(image) / w.squaredNorm();
    const Eigen::VectorXcd point = alpha * u + beta * w;
    for (Eigen::Index q = 0; q < quadrics.rows(); ++q) {
      worst = std::max(worst, std::abs(evaluate_quadric(quadrics.row(q), point)));
    }
  }
  return worst;
}

TorsionParts torsion_parts(const QuadricSpace& space, const TranslationAction& action, double threshold) {
  const int w = sym2_dimension(space.n);
  const auto split = split_quadrics(action.map);
  const Eigen::MatrixXcd base = orthonormal_rows(split.base, w);
  const Eigen::MatrixXcd harm = orthonormal_rows(split.harmonic, w);
  const Eigen::MatrixXcd k = rows_to_columns(space.basis);
  TorsionParts parts;
  // The space is stable under the involution, so its projections onto the
  // two summands are its intersections with them.
  // With k orthonormal, the projection's singular values are cosines of
  // principal angles; keep the directions whose sine is below threshold, as
  // the k_b / k_h counts do. A relative cut would keep pure noise when the
  // intersection is empty.
  const double min_cos = std::sqrt(std::max(0.0, 1 - threshold * threshold));
  auto shared = [&](const Eigen::MatrixXcd& summand) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd proj = summand.transpose() * (summand.conjugate() * k);
    if (proj.cols() == 0) return Eigen::MatrixXcd(w, 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(proj, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s[r] > min_cos) ++r;
    return svd.matrixU().leftCols(r);
  };
  parts.base = shared(base).transpose();
  parts.harmonic = shared(harm).transpose();
  return parts;
}

IdealReport analyze(const QuadricSpace& space, const PeriodMatrix& p, const LabConfig& cfg) {
  const int n = p.n;
  const int w = sym2_dimension(n);
  const double thr = cfg.subspace_threshold();
  IdealReport rep;
  rep.n = n;
  rep.k = space.dimension();
  rep.samples = space.samples;
  rep.gap_ratio = space.rank.gap_ratio;
  rep.sigma_max = space.rank.sigma_max;
  rep.kept_sigma_min = space.rank.kept_min;
  rep.dropped_sigma_max = space.rank.dropped_max;
  rep.verification_residual = space.verification_residual;
  for (int i = 0; i < 4; ++i) rep.omega[i] = p.omega(i / 2, i % 2);

  rep.isotypic = isotypic_dimensions(space.basis, n, thr);

  const Eigen::MatrixXcd k = rows_to_columns(space.basis);
  const auto schr = make_rep(n);
  for (const auto& g : {schr.sigma, schr.tau}) {
    rep.heisenberg_residual = std::max(rep.heisenberg_residual, subspace_residual(k, induced_matrix(g) * k));
  }

  const std::uint64_t action_seed = derive_seed(cfg.seed, kActionStream);
  for (const auto& t : {TorsionPoint::t_sigma(), TorsionPoint::t_tau()}) {
    const auto act = translate_action(p, t, action_seed, double_tail(cfg));
    rep.equivariance_residual = std::max(rep.equivariance_residual, act.residual);
    rep.sigma_direction = act.sigma_direction;
  }

  if (n % 2 == 0) {
    double control = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 3; ++i) {
      const auto act = translate_action(p, TorsionPoint::two_torsion(i, n), action_seed, double_tail(cfg));
      rep.equivariance_residual = std::max(rep.equivariance_residual, act.residual);
      const auto split = split_quadrics(act.map);
      const Eigen::MatrixXcd base = orthonormal_rows(split.base, w).transpose();
      const Eigen::MatrixXcd harm = orthonormal_rows(split.harmonic, w).transpose();

      TorsionReport tr;
      tr.point = act.point.label;
      tr.involution = involution_label(act.map);
      tr.k_b = intersection_dimension(k, base, thr);
      tr.k_h = intersection_dimension(k, harm, thr);
      tr.base_families = family_list(n, split.base);

      const auto parts = torsion_parts(space, act, thr);
      const std::uint64_t scroll_seed = derive_seed(cfg.seed, 100 + i);
      tr.scroll_residual = scroll_check(parts.base, p, act, cfg.scroll_trials, scroll_seed, double_tail(cfg));
      tr.harmonic_control = scroll_check(parts.harmonic, p, act, cfg.scroll_trials, scroll_seed, double_tail(cfg));
      rep.scroll_residual = std::max(rep.scroll_residual, tr.scroll_residual);
      if (parts.harmonic.rows() > 0) control = std::min(control, tr.harmonic_control);
      rep.torsion.push_back(std::move(tr));
    }
    rep.harmonic_control = std::isfinite(control) ? control : 0.0;
  }
  return rep;
}

VerificationRun run_verification(int n, const LabConfig& cfg, const std::optional<PeriodMatrix>& fixed_omega) {
  if (fixed_omega && fixed_omega->n != n) {
    throw std::invalid_argument("run_verification: period matrix is for n=" + std::to_string(fixed_omega->n));
  }
  const int attempts = fixed_omega ? 1 : cfg.max_retries + 1;
  const std::set<int> admissible = n >= 5 ? possible_k(n) : std::set<int>{};
  std::vector<std::string> log;
  std::optional<VerificationRun> last;
  std::optional<IndeterminateRankError> last_error;

  for (int attempt = 0; attempt < attempts; ++attempt) {
    LabConfig run_cfg = cfg;
    run_cfg.seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, 1000 + attempt);
    const std::uint64_t omega_seed = run_cfg.seed;
    const PeriodMatrix p = fixed_omega ? *fixed_omega : sample_period_matrix(n, omega_seed);
    try {
      VerificationRun run{p, vanishing_quadrics(p, run_cfg), {}, log};
      run.report = analyze(run.space, p, run_cfg);
      run.report.omega_seed = fixed_omega ? 0 : omega_seed;
      run.report.retries = attempt;
      if (admissible.empty() || admissible.count(run.report.k)) return run;
      log.push_back("attempt " + std::to_string(attempt) + ": k=" + std::to_string(run.report.k) +
                    " outside possible_k");
      run.retry_log = log;
      last = std::move(run);
    } catch (const IndeterminateRankError& e) {
      log.push_back("attempt " + std::to_string(attempt) + ": " + e.what());
      last_error = e;
    }
  }
  if (last) {
    last->retry_log = log;
    return *last;
  }
  throw *last_error;
}

}  // namespace abq
