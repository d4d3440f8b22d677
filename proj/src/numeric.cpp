#include "abqlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace abq {

RankDecision decide_rank(const std::vector<double>& singular_values, int columns, double rel_tol,
                         double epsilon) {
  RankDecision d;
  d.columns = columns;
  d.singular_values = singular_values;
  std::sort(d.singular_values.begin(), d.singular_values.end(), std::greater<>());
  // Fewer rows than columns: the missing singular values are exact zeros.
  d.singular_values.resize(columns, 0.0);
  if (columns == 0) return d;

  d.sigma_max = d.singular_values.front();
  if (d.sigma_max == 0) {
    d.rank = 0;
    d.gap_ratio = 0;
    return d;
  }
  const double floor = d.sigma_max * epsilon * columns;
  const double cutoff = rel_tol * d.sigma_max;
  auto value = [&](int i) { return i < columns ? d.singular_values[i] : floor; };
  auto ratio = [&](int r) { return value(r - 1) / std::max(value(r), floor); };

  int best = columns;
  double best_ratio = -1;
  for (int r = 1; r < columns; ++r) {
    if (value(r) > cutoff) continue;
    const double q = ratio(r);
    if (q > best_ratio) {
      best_ratio = q;
      best = r;
    }
  }
  d.rank = best;
  d.kept_min = value(best - 1);
  d.dropped_max = best < columns ? value(best) : 0.0;
  // Full rank: compare the smallest value with the noise floor.
  d.gap_ratio = best < columns ? best_ratio : value(columns - 1) / floor;
  return d;
}

int numerical_rank(const Eigen::MatrixXcd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > threshold) ++r;
  }
  return r;
}

Eigen::MatrixXcd column_basis(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = s.size() ? s[0] * rel_tol : 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cut) ++r;
  }
  return svd.matrixU().leftCols(r);
}

std::vector<double> principal_angle_sines(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& x) {
  if (x.cols() == 0) return {};
  if (basis.rows() != x.rows()) throw std::invalid_argument("principal_angle_sines: row mismatch");
  Eigen::MatrixXcd residual = x;
  if (basis.cols() > 0) residual -= basis * (basis.adjoint() * x);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
  std::vector<double> out(x.cols(), 0.0);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) out[i] = s[i];
  std::sort(out.begin(), out.end());
  return out;
}

int intersection_dimension(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double threshold) {
  // Work from the smaller side so each angle is counted once.
  const auto sines = a.cols() <= b.cols() ? principal_angle_sines(b, a) : principal_angle_sines(a, b);
  return static_cast<int>(std::count_if(sines.begin(), sines.end(),
                                        [&](double s) { return s < threshold; }));
}

double subspace_residual(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& x) {
  if (x.cols() == 0) return 0;
  Eigen::MatrixXcd residual = x;
  if (basis.cols() > 0) residual -= basis * (basis.adjoint() * x);
  return residual.colwise().norm().maxCoeff();
}

double projective_residual(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w) {
  const double nu = u.squaredNorm();
  const double nw = w.squaredNorm();
  if (nu == 0 || nw == 0) return nu == nw ? 0.0 : 1.0;
  const std::complex<double> c = u.dot(w) / nu;
  return (w - c * u).norm() / std::sqrt(nw);
}

}  // namespace abq
