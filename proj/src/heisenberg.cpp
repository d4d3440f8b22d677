#include "abqlab/heisenberg.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace abq {

namespace {

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

MonomialBasis::MonomialBasis(int n) : n_(n), lookup_(static_cast<std::size_t>(n) * n, -1) {
  if (n < 1) throw std::invalid_argument("MonomialBasis: n must be >= 1");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      lookup_[i * n + j] = lookup_[j * n + i] = static_cast<int>(monomials_.size());
      monomials_.emplace_back(i, j);
    }
  }
}

int MonomialBasis::index(int i, int j) const { return lookup_[mod(i, n_) * n_ + mod(j, n_)]; }

MonomialMap MonomialMap::identity(int n) { return scalar(n, 0); }

MonomialMap MonomialMap::scalar(int n, int exponent) {
  MonomialMap m;
  m.n = n;
  m.target.resize(n);
  m.exponent.assign(n, mod(exponent, n));
  for (int j = 0; j < n; ++j) m.target[j] = j;
  return m;
}

MonomialMap MonomialMap::compose(const MonomialMap& inner) const {
  if (inner.n != n) throw std::invalid_argument("MonomialMap::compose: size mismatch");
  MonomialMap out;
  out.n = n;
  out.target.resize(n);
  out.exponent.resize(n);
  for (int j = 0; j < n; ++j) {
    const int mid = inner.target[j];
    out.target[j] = target[mid];
    out.exponent[j] = mod(inner.exponent[j] + exponent[mid], n);
  }
  return out;
}

MonomialMap MonomialMap::inverse() const {
  MonomialMap out;
  out.n = n;
  out.target.assign(n, -1);
  out.exponent.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    // x_j -> eps^e x_t  inverts to  x_t -> eps^-e x_j
    out.target[target[j]] = j;
    out.exponent[target[j]] = mod(-exponent[j], n);
  }
  return out;
}

MonomialMap MonomialMap::power(int k) const {
  MonomialMap base = k >= 0 ? *this : inverse();
  MonomialMap out = identity(n);
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) out = base.compose(out);
  return out;
}

bool MonomialMap::is_scalar(int* e) const {
  for (int j = 0; j < n; ++j) {
    if (target[j] != j || exponent[j] != exponent[0]) return false;
  }
  if (e) *e = n > 0 ? exponent[0] : 0;
  return true;
}

std::vector<std::vector<Cyclotomic>> MonomialMap::dense() const {
  std::vector<std::vector<Cyclotomic>> m(n, std::vector<Cyclotomic>(n, Cyclotomic(n)));
  for (int j = 0; j < n; ++j) m[target[j]][j] = Cyclotomic::root(n, exponent[j]);
  return m;
}

Eigen::VectorXcd MonomialMap::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != n) throw std::invalid_argument("MonomialMap::apply: size mismatch");
  Eigen::VectorXcd out(n);
  const double step = 2 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) out[j] = std::polar(1.0, step * exponent[j]) * v[target[j]];
  return out;
}

std::complex<double> SchrodingerRep::epsilon() const {
  return std::polar(1.0, 2 * std::numbers::pi / n);
}

SchrodingerRep make_rep(int n) {
  if (n < 2) throw std::invalid_argument("make_rep: n must be >= 2, got " + std::to_string(n));
  SchrodingerRep rep;
  rep.n = n;
  rep.sigma.n = rep.tau.n = n;
  rep.sigma.target.resize(n);
  rep.sigma.exponent.assign(n, 0);
  rep.tau.target.resize(n);
  rep.tau.exponent.resize(n);
  for (int j = 0; j < n; ++j) {
    rep.sigma.target[j] = mod(j - 1, n);
    rep.tau.target[j] = j;
    rep.tau.exponent[j] = j;
  }
  return rep;
}

MonomialMap word_map(const SchrodingerRep& rep, const GroupWord& word) {
  MonomialMap out = MonomialMap::identity(rep.n);
  for (auto g : word) {
    switch (g) {
      case Generator::Sigma: out = out.compose(rep.sigma); break;
      case Generator::Tau: out = out.compose(rep.tau); break;
      case Generator::SigmaInv: out = out.compose(rep.sigma.inverse()); break;
      case Generator::TauInv: out = out.compose(rep.tau.inverse()); break;
    }
  }
  return out;
}

Quadric zero_quadric(int n) { return Quadric(sym2_dimension(n), Cyclotomic(n)); }

Quadric monomial_quadric(int n, int i, int j, int coefficient) {
  Quadric q = zero_quadric(n);
  q[MonomialBasis(n).index(i, j)] = Cyclotomic::integer(n, coefficient);
  return q;
}

Quadric act_on_quadric(const MonomialMap& g, const Quadric& q) {
  const int n = g.n;
  if (static_cast<int>(q.size()) != sym2_dimension(n)) {
    throw std::invalid_argument("act_on_quadric: expected " + std::to_string(sym2_dimension(n)) +
                                " coefficients, got " + std::to_string(q.size()));
  }
  const MonomialBasis basis(n);
  Quadric out = zero_quadric(n);
  for (int idx = 0; idx < basis.size(); ++idx) {
    if (q[idx].is_zero()) continue;
    const auto [i, j] = basis.monomial(idx);
    const Cyclotomic scale = Cyclotomic::root(n, g.exponent[i] + g.exponent[j]);
    out[basis.index(g.target[i], g.target[j])] += q[idx] * scale;
  }
  return out;
}

Quadric act_on_quadric(const SchrodingerRep& rep, const GroupWord& word, const Quadric& q) {
  return act_on_quadric(word_map(rep, word), q);
}

Eigen::MatrixXcd induced_matrix(const MonomialMap& g) {
  const MonomialBasis basis(g.n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  const double step = 2 * std::numbers::pi / g.n;
  for (int idx = 0; idx < basis.size(); ++idx) {
    const auto [i, j] = basis.monomial(idx);
    m(basis.index(g.target[i], g.target[j]), idx) +=
        std::polar(1.0, step * (g.exponent[i] + g.exponent[j]));
  }
  return m;
}

std::pair<int, int> central_signature(int n, int l, int sign) {
  if (n % 2 != 0) throw std::invalid_argument("central_signature: n must be even");
  if ((l != 0 && l != 1) || (sign != 1 && sign != -1)) {
    throw std::invalid_argument("central_signature: expected l in {0,1} and sign in {+1,-1}");
  }
  const int d = n / 2;
  const auto rep = make_rep(n);
  const MonomialMap sd = rep.sigma.power(d);
  const MonomialMap td = rep.tau.power(d);
  const MonomialBasis basis(n);

  int s_sigma = 0;
  int s_tau = 0;
  bool seen = false;
  for (int idx = 0; idx < basis.size(); ++idx) {
    const auto [i, j] = basis.monomial(idx);
    if (mod(i + j, 2) != l) continue;
    Quadric b = zero_quadric(n);
    b[idx] += Cyclotomic::integer(n, 1);
    b[basis.index(i + d, j + d)] += Cyclotomic::integer(n, sign);
    bool nonzero = false;
    for (const auto& c : b) nonzero = nonzero || !c.is_zero();
    if (!nonzero) continue;

    int read[2] = {0, 0};
    const MonomialMap* ops[2] = {&sd, &td};
    for (int k = 0; k < 2; ++k) {
      const Quadric image = act_on_quadric(*ops[k], b);
      auto scaled = b;
      for (auto& c : scaled) c = -c;
      if (image == b) read[k] = 1;
      else if (image == scaled) read[k] = -1;
      else throw std::logic_error("central_signature: element does not act by a scalar");
    }
    if (!seen) {
      s_sigma = read[0];
      s_tau = read[1];
      seen = true;
    } else if (read[0] != s_sigma || read[1] != s_tau) {
      throw std::logic_error("central_signature: scalar is not constant on the family");
    }
  }
  if (!seen) throw std::invalid_argument("central_signature: empty family");
  return {s_sigma, s_tau};
}

}  // namespace abq
