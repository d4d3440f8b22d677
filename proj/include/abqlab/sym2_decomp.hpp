#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abqlab/exact_linalg.hpp"
#include "abqlab/heisenberg.hpp"

namespace abq {

enum class ComponentKind {
  OddBlock,    // W_l, n odd
  EvenFamily,  // W_l^+-, n even
  EvenBlock,   // W_{l,m}^+-, n even
};

/// Named subspace of Sym^2 V with an explicit integer basis.
///
/// Basis vectors of a component have pairwise disjoint monomial support and
/// coefficient 1 on their first monomial, so coordinates of a vector in the
/// component are read off at those leading monomials.
struct SymComponent {
  ComponentKind kind = ComponentKind::OddBlock;
  int n = 0;
  int l = 0;
  int m = 0;     // offset i - j; unused for EvenFamily
  int sign = 0;  // +1 / -1 for n even, 0 for n odd
  std::vector<std::vector<int>> basis;

  int dimension() const { return static_cast<int>(basis.size()); }
  std::string name() const;
  // Leading monomial index of every basis vector.
  std::vector<int> leading() const;
};

// Irreducible blocks: W_l for odd n, W_{l,m}^+- for even n.
std::vector<SymComponent> decompose(int n);

// Isotypic families in fixed order. Odd n: W_0 .. W_{(n-1)/2}. Even n:
// W_0^+, W_0^-, W_1^+, W_1^-.
std::vector<SymComponent> families(int n);
int family_index(int l, int sign);

// Multiplicities of (V_0^+, V_0^-, V_1^+, V_1^-) counted from the block
// inventory of decompose(n); checked against the closed form below.
std::array<int, 4> family_multiplicities(int n);
std::array<int, 4> closed_form_multiplicities(int n);

// Exact coordinates of q in the component's basis, or nullopt if q is not
// in its span.
std::optional<std::vector<Cyclotomic>> component_coordinates(const SymComponent& c,
                                                              const Quadric& q);

enum class TorsionLabel { Sigma, Tau, SigmaTau };
std::string to_string(TorsionLabel label);
std::optional<TorsionLabel> parse_torsion_label(const std::string& s);

/// Base/harmonic decomposition of Sym^2 V for an order-two projective
/// involution of P(V).
struct QuadricSplit {
  int n = 0;
  // g with g^2 = eps^normalization * Id on V.
  MonomialMap involution;
  int normalization = 0;
  std::vector<std::vector<int>> base;      // -1 eigenspace of the normalized action on W
  std::vector<std::vector<int>> harmonic;  // +1 eigenspace
};

// Works for any monomial g whose square is scalar and whose normalized
// induced action on W has coefficients +-1.
QuadricSplit split_quadrics(const MonomialMap& involution);

struct InvolutionSplit {
  TorsionLabel label = TorsionLabel::Sigma;
  int n = 0;
  QuadricSplit split;
  // Columns span the +1 / -1 eigenspaces of the normalized involution on V.
  Eigen::MatrixXcd plus_space;
  Eigen::MatrixXcd minus_space;
  // Indices into families(n), found by exact containment tests.
  std::vector<int> base_families;
  std::vector<int> harmonic_families;

  int base_dimension() const { return static_cast<int>(split.base.size()); }
  int harmonic_dimension() const { return static_cast<int>(split.harmonic.size()); }
};

MonomialMap torsion_involution(const SchrodingerRep& rep, TorsionLabel label);
InvolutionSplit involution_split(int n, TorsionLabel label);

// Families contained in a W-subspace given by an integer basis.
std::vector<int> contained_families(int n, const std::vector<std::vector<int>>& space);

class NonInvariantError : public std::runtime_error {
 public:
  NonInvariantError(const std::string& what, std::string component)
      : std::runtime_error(what), component_(std::move(component)) {}
  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

// Dimension of the projection of a space (rows) onto each family. For even n
// the entries must sum to the dimension of the space (invariant subspaces);
// otherwise NonInvariantError is thrown. Odd-n families are mutually
// isomorphic, so no sum rule applies there.
std::vector<int> isotypic_dimensions(const IntegerMatrix& rows, int n);
std::vector<int> isotypic_dimensions(const Eigen::MatrixXcd& rows, int n, double tolerance);

// Integer basis of a component stacked as rows of a complex matrix,
// each row scaled to unit norm.
Eigen::MatrixXcd orthonormal_rows(const std::vector<std::vector<int>>& basis, int width);

}  // namespace abq
