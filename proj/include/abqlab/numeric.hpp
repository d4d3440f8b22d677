#pragma once

#include <vector>

#include <Eigen/Dense>

namespace abq {

/// Outcome of a singular-value gap search.
struct RankDecision {
  int rank = 0;
  int columns = 0;
  // sigma_rank / sigma_{rank+1}; the value past the last singular value is
  // the floating-point noise floor sigma_max * eps * columns.
  double gap_ratio = 0;
  double kept_min = 0;
  double dropped_max = 0;
  double sigma_max = 0;
  std::vector<double> singular_values;

  int kernel_dimension() const { return columns - rank; }
};

// Picks the cut with the largest ratio sigma_r / sigma_{r+1} among cuts whose
// first dropped value is below rel_tol * sigma_max. With no such cut the
// matrix is treated as full column rank.
RankDecision decide_rank(const std::vector<double>& singular_values, int columns, double rel_tol,
                         double epsilon);

// Count of singular values above an absolute threshold.
int numerical_rank(const Eigen::MatrixXcd& m, double threshold);

// Orthonormal basis (as columns) for the column span, threshold relative to
// the largest singular value.
Eigen::MatrixXcd column_basis(const Eigen::MatrixXcd& m, double rel_tol);

// Sines of the principal angles between span(x) and span(basis), both given
// by orthonormal columns; returned in ascending order, one per column of x.
std::vector<double> principal_angle_sines(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& x);

// dim(span(a) cap span(b)) for orthonormal columns: principal angles with
// sine below the threshold.
int intersection_dimension(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double threshold);

// Largest distance from a column of x to span(basis) (orthonormal columns).
double subspace_residual(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& x);

// |w - proj_u(w)| / |w|: zero iff u and w are proportional.
double projective_residual(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w);

}  // namespace abq
