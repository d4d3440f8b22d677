#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "abqlab/cyclotomic.hpp"

namespace abq {

inline int sym2_dimension(int n) { return n * (n + 1) / 2; }

/// Ordered monomial basis {x_i x_j : 0 <= i <= j <= n-1} of Sym^2 V,
/// lexicographic in (i, j).
class MonomialBasis {
 public:
  explicit MonomialBasis(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  // Indices are reduced mod n and may be given in either order.
  int index(int i, int j) const;
  std::pair<int, int> monomial(int idx) const { return monomials_[idx]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> monomials_;
  std::vector<int> lookup_;
};

/// Linear map on V of the form x_j -> eps^exponent[j] * x_{target[j]},
/// eps = exp(2 pi i / n). Every element of the Heisenberg group in the
/// Schroedinger representation has this shape.
struct MonomialMap {
  int n = 0;
  std::vector<int> target;
  std::vector<int> exponent;

  static MonomialMap identity(int n);
  static MonomialMap scalar(int n, int exponent);

  // (*this) o inner
  MonomialMap compose(const MonomialMap& inner) const;
  MonomialMap inverse() const;
  MonomialMap power(int k) const;
  // True if the map is eps^e * Id; e is stored when non-null.
  bool is_scalar(int* e = nullptr) const;

  std::vector<std::vector<Cyclotomic>> dense() const;
  // Applies the substitution to a coordinate vector: (M v)_j = eps^e_j v_{target_j}.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;
};

/// Generators of H_n acting on V = C^n:
///   sigma(x_j) = x_{j-1},  tau(x_j) = eps^j x_j.
/// With these formulas sigma o tau = eps * (tau o sigma).
struct SchrodingerRep {
  int n = 0;
  MonomialMap sigma;
  MonomialMap tau;

  std::complex<double> epsilon() const;
  Cyclotomic epsilon_exact() const { return Cyclotomic::root(n, 1); }
};

SchrodingerRep make_rep(int n);

enum class Generator { Sigma, Tau, SigmaInv, TauInv };
// Product g_0 g_1 ... g_k read as a composition: g_k is applied first.
using GroupWord = std::vector<Generator>;

MonomialMap word_map(const SchrodingerRep& rep, const GroupWord& word);

using Quadric = std::vector<Cyclotomic>;

Quadric zero_quadric(int n);
Quadric monomial_quadric(int n, int i, int j, int coefficient = 1);

// g . q obtained by substituting g(x_i) for every x_i in q.
Quadric act_on_quadric(const MonomialMap& g, const Quadric& q);
Quadric act_on_quadric(const SchrodingerRep& rep, const GroupWord& word, const Quadric& q);

// Matrix of q -> g.q on Sym^2 V in the monomial basis, columns are images
// of basis monomials.
Eigen::MatrixXcd induced_matrix(const MonomialMap& g);

/// Scalars (s_sigma, s_tau) by which sigma^d and tau^d act on the family
/// W_l^sign of Sym^2 V, n = 2d. Read off the family's first basis vector
/// and checked against every other basis vector.
std::pair<int, int> central_signature(int n, int l, int sign);

}  // namespace abq
