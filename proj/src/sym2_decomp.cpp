#include "abqlab/sym2_decomp.hpp"

#include <cmath>
#include <numbers>

#include "abqlab/numeric.hpp"

namespace abq {

namespace {

std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

void require_n(int n, const char* who) {
  if (n < 2) throw std::invalid_argument(std::string(who) + ": n must be >= 2");
}

void require_even(int n, const char* who) {
  require_n(n, who);
  if (n % 2 != 0) throw std::invalid_argument(std::string(who) + ": n must be even");
}

// <v, b> for every row v of `rows` and every basis vector b.
IntegerMatrix pairing(const IntegerMatrix& rows, const std::vector<std::vector<int>>& basis) {
  IntegerMatrix out(rows.size(), std::vector<std::int64_t>(basis.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < basis[b].size(); ++k) acc += rows[r][k] * basis[b][k];
      out[r][b] = acc;
    }
  }
  return out;
}

IntegerMatrix to_integer_matrix(const std::vector<std::vector<int>>& v) {
  IntegerMatrix m;
  m.reserve(v.size());
  for (const auto& row : v) m.emplace_back(row.begin(), row.end());
  return m;
}

}  // namespace

std::string SymComponent::name() const {
  switch (kind) {
    case ComponentKind::OddBlock: return "W_" + std::to_string(l);
    case ComponentKind::EvenFamily: return "W_" + std::to_string(l) + "^" + sign_char(sign);
    case ComponentKind::EvenBlock:
      return "W_{" + std::to_string(l) + "," + std::to_string(m) + "}^" + sign_char(sign);
  }
  return "?";
}

std::vector<int> SymComponent::leading() const {
  std::vector<int> out;
  out.reserve(basis.size());
  for (const auto& b : basis) {
    int idx = 0;
    while (b[idx] == 0) ++idx;
    out.push_back(idx);
  }
  return out;
}

std::vector<SymComponent> decompose(int n) {
  require_n(n, "decompose");
  const MonomialBasis mb(n);
  const int w = mb.size();
  std::vector<SymComponent> out;

  if (n % 2 == 1) {
    for (int l = 0; l <= (n - 1) / 2; ++l) {
      SymComponent c{ComponentKind::OddBlock, n, l, l, 0, {}};
      for (int j = 0; j < n; ++j) {
        std::vector<int> v(w, 0);
        v[mb.index(j + l, j)] = 1;
        c.basis.push_back(std::move(v));
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  const int d = n / 2;
  for (int sign : {1, -1}) {
    for (int m = 0; m <= d; ++m) {
      // x_i x_j -+ x_{i+d} x_{j+d} collapses to 0 when m = d
      if (m == d && sign < 0) continue;
      SymComponent c{ComponentKind::EvenBlock, n, m % 2, m, sign, {}};
      for (int j = 0; j < d; ++j) {
        std::vector<int> v(w, 0);
        const int a = mb.index(j + m, j);
        const int b = mb.index(j + m + d, j + d);
        if (a == b) {
          v[a] = 1;
        } else {
          v[a] += 1;
          v[b] += sign;
        }
        c.basis.push_back(std::move(v));
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

int family_index(int l, int sign) { return 2 * l + (sign < 0 ? 1 : 0); }

std::vector<SymComponent> families(int n) {
  require_n(n, "families");
  if (n % 2 == 1) return decompose(n);
  std::vector<SymComponent> out(4);
  for (int l : {0, 1}) {
    for (int s : {1, -1}) {
      auto& f = out[family_index(l, s)];
      f.kind = ComponentKind::EvenFamily;
      f.n = n;
      f.l = l;
      f.sign = s;
    }
  }
  for (auto& block : decompose(n)) {
    auto& f = out[family_index(block.l, block.sign)];
    for (auto& b : block.basis) f.basis.push_back(std::move(b));
  }
  return out;
}

std::array<int, 4> family_multiplicities(int n) {
  require_even(n, "family_multiplicities");
  std::array<int, 4> counts{0, 0, 0, 0};
  for (const auto& block : decompose(n)) ++counts[family_index(block.l, block.sign)];
  if (counts != closed_form_multiplicities(n)) {
    throw std::logic_error("family_multiplicities: block inventory disagrees with closed form for n=" +
                           std::to_string(n));
  }
  return counts;
}

std::array<int, 4> closed_form_multiplicities(int n) {
  require_even(n, "closed_form_multiplicities");
  const int d = n / 2;
  if (d % 2 == 1) return {(d + 1) / 2, (d + 1) / 2, (d + 1) / 2, (d - 1) / 2};
  return {(d + 2) / 2, d / 2, d / 2, d / 2};
}

std::optional<std::vector<Cyclotomic>> component_coordinates(const SymComponent& c,
                                                              const Quadric& q) {
  if (static_cast<int>(q.size()) != sym2_dimension(c.n)) {
    throw std::invalid_argument("component_coordinates: dimension mismatch");
  }
  Quadric residual = q;
  std::vector<Cyclotomic> coords;
  const auto lead = c.leading();
  for (std::size_t k = 0; k < c.basis.size(); ++k) {
    // basis vectors have disjoint supports and leading entries +-1
    const Cyclotomic coef = residual[lead[k]] * Cyclotomic::integer(c.n, c.basis[k][lead[k]]);
    for (std::size_t idx = 0; idx < residual.size(); ++idx) {
      if (c.basis[k][idx] != 0) residual[idx] -= coef * Cyclotomic::integer(c.n, c.basis[k][idx]);
    }
    coords.push_back(coef);
  }
  for (const auto& r : residual) {
    if (!r.is_zero()) return std::nullopt;
  }
  return coords;
}

std::string to_string(TorsionLabel label) {
  switch (label) {
    case TorsionLabel::Sigma: return "sigma";
    case TorsionLabel::Tau: return "tau";
    case TorsionLabel::SigmaTau: return "sigmatau";
  }
  return "?";
}

std::optional<TorsionLabel> parse_torsion_label(const std::string& s) {
  if (s == "sigma") return TorsionLabel::Sigma;
  if (s == "tau") return TorsionLabel::Tau;
  if (s == "sigmatau") return TorsionLabel::SigmaTau;
  return std::nullopt;
}

QuadricSplit split_quadrics(const MonomialMap& involution) {
  const int n = involution.n;
  int lambda = 0;
  if (!involution.compose(involution).is_scalar(&lambda)) {
    throw std::invalid_argument("split_quadrics: map does not square to a scalar");
  }
  QuadricSplit out;
  out.n = n;
  out.involution = involution;
  out.normalization = lambda;

  // Normalized action on W: q -> eps^-lambda (g . q); it squares to the identity.
  const MonomialBasis mb(n);
  const int w = mb.size();
  std::vector<int> image(w);
  std::vector<int> coef(w);
  for (int idx = 0; idx < w; ++idx) {
    const auto [i, j] = mb.monomial(idx);
    image[idx] = mb.index(involution.target[i], involution.target[j]);
    const auto c = Cyclotomic::root(n, involution.exponent[i] + involution.exponent[j] - lambda);
    std::int64_t value = 0;
    if (!c.as_integer(&value) || (value != 1 && value != -1)) {
      throw std::invalid_argument("split_quadrics: induced action is not a signed permutation");
    }
    coef[idx] = static_cast<int>(value);
  }

  std::vector<bool> done(w, false);
  for (int p = 0; p < w; ++p) {
    if (done[p]) continue;
    const int q = image[p];
    done[p] = done[q] = true;
    if (q == p) {
      std::vector<int> v(w, 0);
      v[p] = 1;
      (coef[p] > 0 ? out.harmonic : out.base).push_back(std::move(v));
      continue;
    }
    // A e_p = c e_q, A e_q = c' e_p with c c' = 1
    std::vector<int> plus(w, 0);
    std::vector<int> minus(w, 0);
    plus[p] = minus[p] = 1;
    plus[q] = coef[p];
    minus[q] = -coef[p];
    out.harmonic.push_back(std::move(plus));
    out.base.push_back(std::move(minus));
  }
  return out;
}

MonomialMap torsion_involution(const SchrodingerRep& rep, TorsionLabel label) {
  require_even(rep.n, "torsion_involution");
  const int d = rep.n / 2;
  switch (label) {
    case TorsionLabel::Sigma: return rep.sigma.power(d);
    case TorsionLabel::Tau: return rep.tau.power(d);
    case TorsionLabel::SigmaTau: return rep.sigma.power(d).compose(rep.tau.power(d));
  }
  throw std::invalid_argument("torsion_involution: bad label");
}

std::vector<int> contained_families(int n, const std::vector<std::vector<int>>& space) {
  const auto fam = families(n);
  const IntegerMatrix s = to_integer_matrix(space);
  const int base_rank = integer_rank(s);
  std::vector<int> out;
  for (std::size_t f = 0; f < fam.size(); ++f) {
    IntegerMatrix stacked = s;
    for (const auto& b : fam[f].basis) stacked.emplace_back(b.begin(), b.end());
    if (integer_rank(stacked) == base_rank) out.push_back(static_cast<int>(f));
  }
  return out;
}

InvolutionSplit involution_split(int n, TorsionLabel label) {
  require_even(n, "involution_split");
  const auto rep = make_rep(n);
  InvolutionSplit out;
  out.label = label;
  out.n = n;
  out.split = split_quadrics(torsion_involution(rep, label));

  // Eigenspaces on V of g / sqrt(eps^lambda).
  const auto& g = out.split.involution;
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
  const double step = 2 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) dense(g.target[j], j) = std::polar(1.0, step * g.exponent[j]);
  dense *= std::polar(1.0, -0.5 * step * out.split.normalization);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  out.plus_space = column_basis(dense + id, 1e-10);
  out.minus_space = column_basis(dense - id, 1e-10);

  out.base_families = contained_families(n, out.split.base);
  out.harmonic_families = contained_families(n, out.split.harmonic);
  return out;
}

std::vector<int> isotypic_dimensions(const IntegerMatrix& rows, int n) {
  require_n(n, "isotypic_dimensions");
  const int w = sym2_dimension(n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != w) throw std::invalid_argument("isotypic_dimensions: width mismatch");
  }
  const auto fam = families(n);
  std::vector<int> dims;
  for (const auto& f : fam) dims.push_back(integer_rank(pairing(rows, f.basis)));
  if (n % 2 == 0) {
    const int total = integer_rank(rows);
    int sum = 0;
    for (int v : dims) sum += v;
    if (sum != total) {
      // A family whose projection leaves the space is the offender.
      for (std::size_t k = 0; k < fam.size(); ++k) {
        IntegerMatrix stacked = rows;
        const auto proj = pairing(rows, fam[k].basis);
        for (const auto& pr : proj) {
          std::vector<std::int64_t> v(w, 0);
          for (std::size_t b = 0; b < fam[k].basis.size(); ++b) {
            for (int i = 0; i < w; ++i) v[i] += pr[b] * fam[k].basis[b][i];
          }
          stacked.push_back(std::move(v));
        }
        if (integer_rank(stacked) != total) {
          throw NonInvariantError("space is not Heisenberg invariant: projection onto " +
                                      fam[k].name() + " leaves it",
                                  fam[k].name());
        }
      }
      throw NonInvariantError("space is not Heisenberg invariant", "");
    }
  }
  return dims;
}

Eigen::MatrixXcd orthonormal_rows(const std::vector<std::vector<int>>& basis, int width) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()), width);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    double norm2 = 0;
    for (int v : basis[r]) norm2 += double(v) * v;
    const double s = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < width; ++k) m(static_cast<Eigen::Index>(r), k) = basis[r][k] * s;
  }
  return m;
}

std::vector<int> isotypic_dimensions(const Eigen::MatrixXcd& rows, int n, double tolerance) {
  require_n(n, "isotypic_dimensions");
  const int w = sym2_dimension(n);
  if (rows.rows() > 0 && rows.cols() != w) {
    throw std::invalid_argument("isotypic_dimensions: width mismatch");
  }
  const auto fam = families(n);
  std::vector<int> dims;
  std::vector<Eigen::MatrixXcd> projections;
  for (const auto& f : fam) {
    const Eigen::MatrixXcd b = orthonormal_rows(f.basis, w);
    // Coordinates of each row's projection in the family's orthonormal basis.
    const Eigen::MatrixXcd coords = rows.rows() > 0 ? Eigen::MatrixXcd(rows * b.adjoint())
                                                    : Eigen::MatrixXcd(0, b.rows());
    dims.push_back(numerical_rank(coords, tolerance));
    projections.push_back(coords * b);
  }
  if (n % 2 == 0 && rows.rows() > 0) {
    const int total = numerical_rank(rows, tolerance);
    int sum = 0;
    for (int v : dims) sum += v;
    if (sum != total) {
      const Eigen::MatrixXcd span = column_basis(rows.transpose(), tolerance);
      std::string worst;
      double worst_residual = -1;
      for (std::size_t k = 0; k < fam.size(); ++k) {
        const double r = subspace_residual(span, projections[k].transpose());
        if (r > worst_residual) {
          worst_residual = r;
          worst = fam[k].name();
        }
      }
      throw NonInvariantError("space is not Heisenberg invariant: projection onto " + worst +
                                  " leaves it (residual " + std::to_string(worst_residual) + ")",
                              worst);
    }
  }
  return dims;
}

}  // namespace abq
