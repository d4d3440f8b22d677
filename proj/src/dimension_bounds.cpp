#include "abqlab/dimension_bounds.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace abq {

namespace {

int choose2(int a) { return a * (a - 1) / 2; }

}  // namespace

int lemma_quadrics_bound(const BoundInput& b) {
  if (!(b.ambient > b.dim && b.dim >= 0 && b.degree >= 1)) {
    throw std::invalid_argument("lemma_quadrics_bound: need ambient > dim >= 0 and degree >= 1");
  }
  const int r = b.ambient - b.dim;
  const int quadrics = choose2(r + 2);  // h^0(O_{P^r}(2))
  if (b.degree > 2 * r) return quadrics - 2 * r - 1;
  return quadrics - b.degree;
}

int irreducible_dimension(int n) { return n / std::gcd(n, 2); }

std::set<int> possible_k(int n) {
  if (n < 5) throw std::invalid_argument("possible_k: n must be >= 5");
  const int lower = std::max(0, n * (n + 1) / 2 - 4 * n);
  const int upper = lemma_quadrics_bound(BoundInput::abelian_surface(n));
  const int step = irreducible_dimension(n);
  std::set<int> out;
  for (int k = 0; k <= upper; k += step) {
    if (k >= lower) out.insert(k);
  }
  return out;
}

std::set<int> kb_bounds(int d) {
  if (d < 3) throw std::invalid_argument("kb_bounds: d must be >= 3");
  const int lower = d == 3 ? 0 : std::max(0, d * (d - 4));
  const int upper = d == 3 ? 2 : d * (d - 4) + 4;
  std::set<int> out;
  for (int k = 0; k <= upper; k += d) {
    if (k >= lower) out.insert(k);
  }
  return out;
}

std::string to_string(const IdealDimTuple& t) {
  std::ostringstream out;
  out << "(" << t[0] << "," << t[1] << "," << t[2] << "," << t[3] << ")";
  return out.str();
}

std::string to_string(ResolveStatus s) {
  switch (s) {
    case ResolveStatus::Unique: return "unique";
    case ResolveStatus::NoAdmissible: return "no admissible tuple";
    case ResolveStatus::Multiple: return "multiple tuples";
  }
  return "?";
}

int known_harmonic_count(int n) {
  if (n == 8) return 4;
  if (n == 12) return 18;
  return 0;
}

std::array<int, 3> base_counts(int n, const IdealDimTuple& t) {
  if (n % 2 != 0) throw std::invalid_argument("base_counts: n must be even");
  const int d = n / 2;
  const auto [p0, m0, p1, m1] = t;
  const int mixed = d % 2 == 1 ? p0 + m1 : m0 + p1;
  return {m0 + m1, p1 + m1, mixed};
}

ResolveResult resolve_ideal_dimensions(int n) {
  if (n != 6 && n != 8 && n != 10 && n != 12) {
    throw std::invalid_argument("resolve_ideal_dimensions: n must be one of 6, 8, 10, 12");
  }
  const int d = n / 2;
  const auto ks = possible_k(n);
  const auto kbs = kb_bounds(d);
  const int kh_known = known_harmonic_count(n);

  // Family capacities: multiplicity * d.
  const std::array<int, 4> mult = d % 2 == 1
                                      ? std::array<int, 4>{(d + 1) / 2, (d + 1) / 2, (d + 1) / 2, (d - 1) / 2}
                                      : std::array<int, 4>{(d + 2) / 2, d / 2, d / 2, d / 2};

  ResolveResult result;
  IdealDimTuple t{};
  for (t[0] = 0; t[0] <= mult[0] * d; t[0] += d) {
    for (t[1] = 0; t[1] <= mult[1] * d; t[1] += d) {
      for (t[2] = 0; t[2] <= mult[2] * d; t[2] += d) {
        for (t[3] = 0; t[3] <= mult[3] * d; t[3] += d) {
          const int k = t[0] + t[1] + t[2] + t[3];
          if (!ks.count(k)) continue;
          const auto kb = base_counts(n, t);
          if (kb[0] != kb[1] || kb[1] != kb[2]) continue;
          if (!kbs.count(kb[0])) continue;
          if (kh_known > 0 && k - kb[0] != kh_known) continue;
          result.tuples.push_back(t);
        }
      }
    }
  }
  result.status = result.tuples.empty()      ? ResolveStatus::NoAdmissible
                  : result.tuples.size() == 1 ? ResolveStatus::Unique
                                              : ResolveStatus::Multiple;
  return result;
}

int predicted_k(int n) {
  if (n == 6 || n == 8 || n == 10 || n == 12) {
    const auto r = resolve_ideal_dimensions(n);
    if (r.status != ResolveStatus::Unique) return -1;
    const auto& t = r.tuples.front();
    return t[0] + t[1] + t[2] + t[3];
  }
  if (n < 5) return -1;
  const auto ks = possible_k(n);
  return ks.size() == 1 ? *ks.begin() : -1;
}

}  // namespace abq
