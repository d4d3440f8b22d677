#include "abqlab/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace abq {

namespace {

// Exact division of integer polynomials where the divisor is monic.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num,
                                       const std::vector<std::int64_t>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw std::logic_error("cyclotomic: inexact polynomial division");
  }
  return quot;
}

long long mod_floor(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  // x^N - 1 = prod_{d | N} Phi_d(x)
  std::vector<std::int64_t> poly(order + 1, 0);
  poly[0] = -1;
  poly[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(order, poly);
  return poly;
}

Cyclotomic::Cyclotomic(int order) : order_(order), mult_(order, 0) {
  if (order < 1) throw std::invalid_argument("Cyclotomic: order must be >= 1");
}

Cyclotomic Cyclotomic::root(int order, long long exponent, std::int64_t multiplicity) {
  Cyclotomic c(order);
  c.mult_[mod_floor(exponent, order)] = multiplicity;
  return c;
}

std::int64_t Cyclotomic::multiplicity(long long exponent) const {
  return mult_[mod_floor(exponent, order_)];
}

std::vector<std::int64_t> Cyclotomic::reduced() const {
  const auto phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::int64_t> r = mult_;
  for (std::size_t i = r.size(); i-- > deg;) {
    const std::int64_t c = r[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= deg; ++k) r[i - deg + k] -= c * phi[k];
  }
  r.resize(deg);
  return r;
}

bool Cyclotomic::is_zero() const {
  for (auto c : reduced()) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyclotomic::as_signed_root(int* exponent, int* sign) const {
  for (int k = 0; k < order_; ++k) {
    for (int s : {1, -1}) {
      if (*this == root(order_, k, s)) {
        *exponent = k;
        *sign = s;
        return true;
      }
    }
  }
  return false;
}

bool Cyclotomic::as_integer(std::int64_t* value) const {
  const auto r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] != 0) return false;
  }
  *value = r.empty() ? 0 : r[0];
  return true;
}

template <class Real>
std::complex<Real> Cyclotomic::evaluate_as() const {
  std::complex<Real> sum(0, 0);
  const Real step = 2 * std::numbers::pi_v<Real> / static_cast<Real>(order_);
  for (int k = 0; k < order_; ++k) {
    if (mult_[k] == 0) continue;
    sum += static_cast<Real>(mult_[k]) * std::polar(Real(1), step * static_cast<Real>(k));
  }
  return sum;
}

template std::complex<double> Cyclotomic::evaluate_as<double>() const;
template std::complex<long double> Cyclotomic::evaluate_as<long double>() const;

void Cyclotomic::require_same_order(const Cyclotomic& other) const {
  if (other.order_ != order_) {
    throw std::invalid_argument("Cyclotomic: mixed orders " + std::to_string(order_) + " and " +
                                std::to_string(other.order_));
  }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  require_same_order(other);
  for (int k = 0; k < order_; ++k) mult_[k] += other.mult_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  require_same_order(other);
  for (int k = 0; k < order_; ++k) mult_[k] -= other.mult_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  require_same_order(other);
  std::vector<std::int64_t> prod(order_, 0);
  for (int a = 0; a < order_; ++a) {
    if (mult_[a] == 0) continue;
    for (int b = 0; b < order_; ++b) {
      if (other.mult_[b] == 0) continue;
      prod[(a + b) % order_] += mult_[a] * other.mult_[b];
    }
  }
  mult_ = std::move(prod);
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic c(*this);
  for (auto& m : c.mult_) m = -m;
  return c;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) return false;
  return (a - b).is_zero();
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k < order_; ++k) {
    const auto c = mult_[k];
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    const auto a = c < 0 ? -c : c;
    if (k == 0) {
      out << a;
    } else {
      if (a != 1) out << a << "*";
      out << "e^" << k;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace abq
