#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

namespace abq {

/// Degree-m, dimension-dim subvariety of P^ambient.
struct BoundInput {
  int ambient = 0;
  int dim = 0;
  int degree = 0;

  // Abelian surface of type (1, n) in P^{n-1}: dim 2, degree 2n.
  static BoundInput abelian_surface(int n) { return {n - 1, 2, 2 * n}; }
};

// Upper bound on the number of independent quadrics through the variety,
// from m general points on a generic linear section of complementary dimension.
int lemma_quadrics_bound(const BoundInput& b);

// Residue of the embedding in Sym^2: d' = n / gcd(n, 2).
int irreducible_dimension(int n);

std::set<int> possible_k(int n);

// Admissible base-quadric counts for a (1, 2d) surface.
std::set<int> kb_bounds(int d);

/// Dimensions of (I_0^+, I_0^-, I_1^+, I_1^-).
using IdealDimTuple = std::array<int, 4>;

std::string to_string(const IdealDimTuple& t);

enum class ResolveStatus { Unique, NoAdmissible, Multiple };
std::string to_string(ResolveStatus s);

struct ResolveResult {
  ResolveStatus status = ResolveStatus::NoAdmissible;
  std::vector<IdealDimTuple> tuples;
};

// k_h fixed by the harmonic-quadric analysis for n = 8 and n = 12; 0 means
// no extra constraint.
int known_harmonic_count(int n);

// Base-quadric count of a tuple for each torsion involution, in the order
// sigma^d, tau^d, sigma^d tau^d (component pairings of the even-n split).
std::array<int, 3> base_counts(int n, const IdealDimTuple& t);

ResolveResult resolve_ideal_dimensions(int n);

// k predicted for a generic (1, n) surface: the resolver's unique total for
// n in {6, 8, 10, 12}, otherwise the single element of possible_k(n).
// Returns -1 when neither applies.
int predicted_k(int n);

}  // namespace abq
