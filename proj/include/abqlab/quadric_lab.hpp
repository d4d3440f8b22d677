#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abqlab/numeric.hpp"
#include "abqlab/theta.hpp"

namespace abq {

struct LabConfig {
  int samples = 0;  // 0: 4 * dim Sym^2 V
  double tolerance = 1e-9;
  double target_tail = 1e-13;
  std::uint64_t seed = 1;
  Precision precision = Precision::Double;
  double gap_threshold = 1e4;
  double verify_threshold = 1e-8;
  int verify_samples = 0;  // 0: dim Sym^2 V
  int scroll_trials = 100;
  int max_retries = 3;

  int sample_count(int n) const;
  // Principal angles with sine below this count as shared directions.
  double subspace_threshold() const { return 1e3 * tolerance; }
};

/// Subspace of Sym^2 V; rows of `basis` are orthonormal coefficient vectors
/// over the monomial basis.
struct QuadricSpace {
  int n = 0;
  Eigen::MatrixXcd basis;
  RankDecision rank;
  double verification_residual = 0;
  int samples = 0;

  int dimension() const { return static_cast<int>(basis.rows()); }
};

class IndeterminateRankError : public std::runtime_error {
 public:
  IndeterminateRankError(const std::string& what, RankDecision d)
      : std::runtime_error(what), decision_(std::move(d)) {}
  const RankDecision& decision() const { return decision_; }

 private:
  RankDecision decision_;
};

class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// q(v) for a coefficient row over the monomial basis.
std::complex<double> evaluate_quadric(const Eigen::RowVectorXcd& q, const Eigen::VectorXcd& v);

// Numerical kernel of the point-evaluation matrix of Sym^2 V on samples of
// the theta embedding, certified by a singular-value gap and re-checked on
// fresh points.
QuadricSpace vanishing_quadrics(const PeriodMatrix& p, const LabConfig& cfg);

struct TorsionReport {
  std::string point;       // x1, x2, x3
  std::string involution;  // sigma, tau, sigmatau
  int k_b = 0;
  int k_h = 0;
  std::string base_families;
  double scroll_residual = 0;
  double harmonic_control = 0;
};

struct IdealReport {
  int n = 0;
  int k = 0;
  std::vector<int> isotypic;
  std::vector<TorsionReport> torsion;

  double gap_ratio = 0;
  double sigma_max = 0;
  double kept_sigma_min = 0;
  double dropped_sigma_max = 0;
  double verification_residual = 0;
  double heisenberg_residual = 0;
  double equivariance_residual = 0;
  int sigma_direction = 0;
  double scroll_residual = 0;
  double harmonic_control = 0;

  std::uint64_t omega_seed = 0;
  int samples = 0;
  int retries = 0;
  std::array<std::complex<double>, 4> omega{};
};

// Largest |q(alpha u + beta w)| over the rows q and `trials` random
// (z, alpha, beta), where u = v(z) and w = v(z + point) aligned to the
// translation map's image of u. Fixed (alpha, beta) may be supplied.
double scroll_check(const Eigen::MatrixXcd& quadrics, const PeriodMatrix& p, const TranslationAction& action,
                    int trials, std::uint64_t seed, double target_tail,
                    std::optional<std::array<std::complex<double>, 2>> coefficients = std::nullopt);

// Parts of the space lying in the base and harmonic summands for a
// translation by a 2-torsion point (rows orthonormal).
struct TorsionParts {
  Eigen::MatrixXcd base;
  Eigen::MatrixXcd harmonic;
};
TorsionParts torsion_parts(const QuadricSpace& space, const TranslationAction& action, double threshold);

IdealReport analyze(const QuadricSpace& space, const PeriodMatrix& p, const LabConfig& cfg);

/// Full pipeline with the resampling policy: a rank that cannot be certified
/// or a dimension outside possible_k(n) triggers a fresh Omega (at most
/// cfg.max_retries times). A fixed Omega disables resampling.
struct VerificationRun {
  PeriodMatrix matrix;
  QuadricSpace space;
  IdealReport report;
  std::vector<std::string> retry_log;
};

VerificationRun run_verification(int n, const LabConfig& cfg,
                                 const std::optional<PeriodMatrix>& fixed_omega = std::nullopt);

}  // namespace abq
