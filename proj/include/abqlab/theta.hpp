#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "abqlab/heisenberg.hpp"

namespace abq {

enum class Precision { Double, Extended };
std::string to_string(Precision p);
std::optional<Precision> parse_precision(const std::string& s);

template <class Real>
using VectorXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Period matrix of A = C^2 / (Omega Z^2 + D Z^2), D = diag(1, n).
struct PeriodMatrix {
  int n = 0;
  Eigen::Matrix2cd omega;
  double lambda_min = 0;  // smallest eigenvalue of Im(omega)

  // Rejects asymmetric input, n < 2 and Im(omega) with eigenvalues below 0.5.
  static PeriodMatrix create(int n, const Eigen::Matrix2cd& omega);

  Eigen::Matrix2d real_part() const { return omega.real(); }
  Eigen::Matrix2d imag_part() const { return omega.imag(); }
  Eigen::Vector2d type_diagonal() const { return {1.0, static_cast<double>(n)}; }
  // Omega * a + D * b
  Eigen::Vector2cd lattice_vector(const Eigen::Vector2d& a, const Eigen::Vector2d& b) const;
};

// Omega = i P + S, P symmetric with eigenvalues in [1, 2], S real symmetric
// with entries in (-1/2, 1/2).
PeriodMatrix sample_period_matrix(int n, std::uint64_t seed);

// Uniform point of the fundamental parallelepiped, Omega y + D x with
// x, y in [0, 1)^2.
template <class Gen>
Eigen::Vector2cd sample_point(const PeriodMatrix& p, Gen& rng) {
  const Eigen::Vector2d a(rng.uniform(), rng.uniform());
  const Eigen::Vector2d b(rng.uniform(), rng.uniform());
  return p.lattice_vector(a, b);
}

class TailCertificationError : public std::runtime_error {
 public:
  TailCertificationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// theta_j(z) for j = 0..n-1, characteristic (0, j/n).
struct ThetaEvaluation {
  Eigen::Vector2cd z;
  Eigen::VectorXcd values;
  // Certified bound on the truncation error of every entry, relative to
  // `scale` (the modulus of the largest series term times the
  // quasi-periodicity factor).
  double tail_bound = 0;
  double scale = 0;
  double radius = 0;
};

ThetaEvaluation theta_basis(const PeriodMatrix& p, const Eigen::Vector2cd& z, double target_tail);

/// Theta values at z up to a common factor, scaled to unit maximum modulus.
/// `tail_bound` receives the certified relative tail bound when non-null.
template <class Real>
VectorXc<Real> normalized_theta(const PeriodMatrix& p, const Eigen::Vector2cd& z, double target_tail,
                                double* tail_bound = nullptr);

extern template VectorXc<double> normalized_theta<double>(const PeriodMatrix&, const Eigen::Vector2cd&,
                                                          double, double*);
extern template VectorXc<long double> normalized_theta<long double>(const PeriodMatrix&,
                                                                    const Eigen::Vector2cd&, double,
                                                                    double*);

// Truncation radius (around the series' Gaussian centre) achieving the
// target, and the certified relative tail bound at that radius.
struct TailPlan {
  double radius = 0;
  double bound = 0;
};
TailPlan plan_truncation(double lambda_min, double target_tail, double epsilon);

/// Point a * t_sigma + b * t_tau of K(L), with t_sigma = Omega (0, 1/n)^T and
/// t_tau = (0, 1)^T.
struct TorsionPoint {
  std::string label;
  int sigma_steps = 0;
  int tau_steps = 0;

  static TorsionPoint t_sigma() { return {"t_sigma", 1, 0}; }
  static TorsionPoint t_tau() { return {"t_tau", 0, 1}; }
  // x1 = d t_sigma, x2 = d t_tau, x3 = x1 + x2 for n = 2d; i in {1, 2, 3}.
  static TorsionPoint two_torsion(int i, int n);

  Eigen::Vector2cd coords(const PeriodMatrix& p) const;
};

/// Induced map on theta value vectors: v(z + t) is proportional to map.apply(v(z)).
struct TranslationAction {
  TorsionPoint point;
  MonomialMap map;
  int sigma_direction = 1;  // t_sigma shifts theta_j to theta_{j + direction}
  double residual = 0;      // worst projective residual over the check points
};

// Tests both shift directions for t_sigma on `checks` random points and
// returns the consistent one. Throws if neither fits within 1e-6.
int detect_sigma_direction(const PeriodMatrix& p, std::uint64_t seed, double target_tail,
                           double* residual = nullptr, int checks = 10);

TranslationAction translate_action(const PeriodMatrix& p, const TorsionPoint& point,
                                   std::uint64_t seed, double target_tail, int checks = 10);

/// Plain-text key/value period-matrix document.
struct PeriodMatrixFile {
  PeriodMatrix matrix;
  std::optional<std::uint64_t> seed;
};

std::string format_period_matrix(const PeriodMatrixFile& f);
PeriodMatrixFile parse_period_matrix(const std::string& text);
PeriodMatrixFile read_period_matrix(const std::string& path);
void write_period_matrix(const std::string& path, const PeriodMatrixFile& f);

}  // namespace abq
