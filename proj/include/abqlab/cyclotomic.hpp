#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace abq {

// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(int order);

/// Exact element of the ring Z[zeta], zeta = exp(2 pi i / order).
///
/// Stored as integer multiplicities of the powers zeta^0 .. zeta^(order-1).
/// Two elements compare equal when their difference reduces to zero modulo
/// the cyclotomic polynomial of the order, so representations that differ
/// by a multiple of 1 + zeta + ... + zeta^(order-1) (and similar relations)
/// are identified.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int order);

  static Cyclotomic root(int order, long long exponent, std::int64_t multiplicity = 1);
  static Cyclotomic integer(int order, std::int64_t value) { return root(order, 0, value); }

  int order() const { return order_; }
  std::int64_t multiplicity(long long exponent) const;
  const std::vector<std::int64_t>& multiplicities() const { return mult_; }

  // Coefficients modulo the cyclotomic polynomial; length is phi(order).
  std::vector<std::int64_t> reduced() const;
  bool is_zero() const;

  // If the element equals +-zeta^k, returns true and stores k and the sign.
  bool as_signed_root(int* exponent, int* sign) const;
  // If the element is a rational integer, returns true and stores it.
  bool as_integer(std::int64_t* value) const;

  template <class Real>
  std::complex<Real> evaluate_as() const;
  std::complex<double> evaluate() const { return evaluate_as<double>(); }

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;

 private:
  void require_same_order(const Cyclotomic& other) const;

  int order_;
  std::vector<std::int64_t> mult_;
};

extern template std::complex<double> Cyclotomic::evaluate_as<double>() const;
extern template std::complex<long double> Cyclotomic::evaluate_as<long double>() const;

}  // namespace abq
