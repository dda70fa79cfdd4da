#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regint/laurent.hpp"

namespace regint {

using Rational = boost::multiprecision::cpp_rational;

// Symbols of the lambda data: L = residue of lambda_F at 0 (any integer
// power), l_k = k-th Taylor coefficient*k! of the holomorphic part of lambda_F
// at 0, m_k = k-th derivative of lambda_tilde at 0. Even m_k are eliminated
// through lambda_tilde(s) lambda_tilde(-s) = 1, so equal values have equal
// representations.
class Poly {
 public:
  enum class Sym { L, ell, m };
  // sorted (symbol key, exponent) pairs
  using Monomial = std::map<int, int>;

  Poly() = default;
  Poly(long long c);  // NOLINT: integers embed as constants
  Poly(Rational c);   // NOLINT

  static Poly L(int power = 1);
  static Poly ell(int k);
  static Poly m(int k);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const;
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  // Numeric value from the computed lambda data.
  double evaluate() const;
  double evaluate(const LambdaLaurentData& d) const;

  std::string to_string() const;
  static std::string monomial_name(const Monomial& mono);

 private:
  void add_term(const Monomial& mono, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace regint
