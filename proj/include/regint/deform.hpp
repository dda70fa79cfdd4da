#pragma once

#include <span>
#include <vector>

#include "regint/laurent.hpp"
#include "regint/poly.hpp"

namespace regint {

// Coefficient rings for the deformation engine: lambda data either as symbols
// (Poly) or as numbers (cplx). Numeric rings also allow factors centred away
// from the singular points.
template <class Ring>
struct LambdaRing;

template <>
struct LambdaRing<Poly> {
  static Poly rational(const Rational& q) { return Poly(q); }
  static Poly L(int power) { return Poly::L(power); }
  static Poly ell(int k) { return Poly::ell(k); }
  static Poly m(int k) { return Poly::m(k); }
  static Poly lambda_F_at(int k, cplx v);      // only v = 0 is symbolic
  static Poly lambda_tilde_at(int k, cplx s);  // only s = 0
  static double magnitude(const Poly& p) { return std::abs(p.evaluate()); }
};

template <>
struct LambdaRing<cplx> {
  static cplx rational(const Rational& q) { return static_cast<double>(q); }
  static cplx L(int power);
  static cplx ell(int k);
  static cplx m(int k);
  static cplx lambda_F_at(int k, cplx v) { return lambda_F_deriv(k, v); }
  static cplx lambda_tilde_at(int k, cplx s) { return lambda_tilde_deriv(k, s); }
  static double magnitude(cplx c) { return std::abs(c); }
};

enum class FactorKind { plain, regularized };

// E^{(n)}(s0 + rate*u) or E^{reg,(n)}(s0 + rate*u). rate = 0 keeps the factor
// fixed along the deformation.
struct DeformedFactor {
  FactorKind kind = FactorKind::plain;
  cplx s0 = 0.0;
  int deriv_order = 0;
  int rate = 0;
};

// Constant-term monomial c(u) t^{1/2 + alpha0 + rate*u} log^n t.
template <class Ring>
struct DeformTerm {
  cplx alpha0;
  int rate = 0;
  int n = 0;
  Laurent<Ring> c;
};

template <class Ring>
struct DeformationOutcome {
  Ring value;                // regularized integral of the undeformed product
  Laurent<Ring> expression;  // in u; its order-0 coefficient is L * value
  double max_residual = 0.0;
  std::vector<DeformTerm<Ring>> exponents;
};

// Order-0 coefficient of expr after checking that every negative order is
// below tol in magnitude.
template <class Ring>
Ring deform_limit(const Laurent<Ring>& expr, double tol = 1e-9, double* max_residual = nullptr);

// Regularized integral of a product of at most two Eisenstein factors, taken
// as the u -> 0 limit of the deformed family plus the residues of the poles
// that merge into 1/2.
template <class Ring>
DeformationOutcome<Ring> deform_product(std::span<const DeformedFactor> factors, double tol = 1e-9);

extern template Poly deform_limit<Poly>(const Laurent<Poly>&, double, double*);
extern template cplx deform_limit<cplx>(const Laurent<cplx>&, double, double*);
extern template DeformationOutcome<Poly> deform_product<Poly>(std::span<const DeformedFactor>, double);
extern template DeformationOutcome<cplx> deform_product<cplx>(std::span<const DeformedFactor>, double);

}  // namespace regint
