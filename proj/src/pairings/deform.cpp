#include "regint/deform.hpp"

#include <cmath>

#include "regint/errors.hpp"

namespace regint {
namespace {

constexpr double kAlphaTol = 1e-12;

bool near(cplx a, cplx b) { return std::abs(a - b) < kAlphaTol; }

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

Rational power(int base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class Ring>
using Series = Laurent<Ring>;

template <class Ring>
Series<Ring> constant_series(const Ring& c, int K) {
  std::vector<Ring> v(std::size_t(K + 1), Ring{});
  v[0] = c;
  return Series<Ring>(0.0, 0, std::move(v));
}

// lambda_F^{(j)}(v0 + rate*u) in u through order K.
template <class Ring>
Series<Ring> lambda_F_series(int j, cplx v0, int rate, int K) {
  using R = LambdaRing<Ring>;
  if (v0 == cplx(0.0)) {
    if (rate == 0) throw DomainError("lambda_F evaluated at its pole");
    const int lo = -(j + 1);
    std::vector<Ring> v(std::size_t(K - lo + 1), Ring{});
    const Rational sign = (j % 2 == 0) ? 1 : -1;
    v[0] = R::rational(sign * factorial(j) / power(rate, j + 1)) * R::L(1);
    for (int k = 0; k <= K; ++k) v[std::size_t(k - lo)] = R::rational(power(rate, k) / factorial(k)) * R::ell(k + j);
    return Series<Ring>(0.0, lo, std::move(v));
  }
  if (rate == 0) return constant_series<Ring>(R::lambda_F_at(j, v0), K);
  std::vector<Ring> v(std::size_t(K + 1));
  for (int k = 0; k <= K; ++k) v[std::size_t(k)] = R::rational(power(rate, k) / factorial(k)) * R::lambda_F_at(j + k, v0);
  return Series<Ring>(0.0, 0, std::move(v));
}

// lambda_tilde^{(j)}(s0 + rate*u) in u through order K.
template <class Ring>
Series<Ring> lambda_tilde_series(int j, cplx s0, int rate, int K) {
  using R = LambdaRing<Ring>;
  if (near(s0, 0.5)) return lambda_F_series<Ring>(j, 0.0, rate, K);
  if (s0 == cplx(0.0)) {
    std::vector<Ring> v(std::size_t(K + 1));
    for (int k = 0; k <= K; ++k) v[std::size_t(k)] = R::rational(power(rate, k) / factorial(k)) * R::m(j + k);
    return Series<Ring>(0.0, 0, std::move(v));
  }
  if (rate == 0) return constant_series<Ring>(R::lambda_tilde_at(j, s0), K);
  std::vector<Ring> v(std::size_t(K + 1));
  for (int k = 0; k <= K; ++k)
    v[std::size_t(k)] = R::rational(power(rate, k) / factorial(k)) * R::lambda_tilde_at(j + k, s0);
  return Series<Ring>(0.0, 0, std::move(v));
}

template <class Ring>
struct FactorData {
  std::vector<DeformTerm<Ring>> terms;
  Series<Ring> constant_part;  // L times the regularized integral of the factor
};

template <class Ring>
FactorData<Ring> factor_data(const DeformedFactor& f, int K) {
  using R = LambdaRing<Ring>;
  const int n = f.deriv_order;
  if (n < 0) throw UnsupportedOrder("negative derivative order");
  FactorData<Ring> out;
  out.terms.push_back({f.s0, f.rate, n, constant_series<Ring>(R::rational(1), K)});
  if (f.kind == FactorKind::plain) {
    if (near(f.s0, 0.5)) throw PoleError("plain Eisenstein factor at its pole");
    for (int k = 0; k <= n; ++k) {
      const Rational w = binom(n, k) * ((k % 2 == 0) ? 1 : -1);
      out.terms.push_back({-f.s0, -f.rate, k, R::rational(w) * lambda_tilde_series<Ring>(n - k, f.s0, f.rate, K)});
    }
    out.constant_part = constant_series<Ring>(Ring{}, K);
    return out;
  }
  const cplx v0 = f.s0 - 0.5;
  for (int k = 0; k <= n; ++k) {
    const Rational w = binom(n, k) * ((k % 2 == 0) ? 1 : -1);
    out.terms.push_back({-f.s0, -f.rate, k, R::rational(w) * lambda_F_series<Ring>(n - k, v0, f.rate, K)});
  }
  const auto shift = lambda_F_series<Ring>(n, v0, f.rate, K);
  out.terms.push_back({-0.5, 0, 0, -shift});
  out.constant_part = -shift;
  return out;
}

template <class Ring>
void add_term(std::vector<DeformTerm<Ring>>& terms, DeformTerm<Ring> t) {
  for (auto& e : terms)
    if (near(e.alpha0, t.alpha0) && e.rate == t.rate && e.n == t.n) {
      e.c = e.c + t.c;
      return;
    }
  terms.push_back(std::move(t));
}

}  // namespace

Poly LambdaRing<Poly>::lambda_F_at(int, cplx) {
  throw DomainError("symbolic lambda_F data exists only at the pole");
}

Poly LambdaRing<Poly>::lambda_tilde_at(int k, cplx s) {
  if (s != cplx(0.0)) throw DomainError("symbolic lambda_tilde data exists only at 0");
  return Poly::m(k);
}

cplx LambdaRing<cplx>::L(int power) { return std::pow(lambda_laurent_data().residue, power); }

cplx LambdaRing<cplx>::ell(int k) {
  const auto& d = lambda_laurent_data();
  if (k < 0 || std::size_t(k) >= d.ell.size()) throw UnsupportedOrder("ell index beyond the lambda table");
  return d.ell[std::size_t(k)];
}

cplx LambdaRing<cplx>::m(int k) {
  const auto& d = lambda_laurent_data();
  if (k < 0 || std::size_t(k) >= d.m.size()) throw UnsupportedOrder("m index beyond the lambda table");
  return d.m[std::size_t(k)];
}

template <class Ring>
Ring deform_limit(const Laurent<Ring>& expr, double tol, double* max_residual) {
  if (expr.max_order() < 0) throw OrderRangeError("expression not known through order 0");
  double worst = 0.0;
  for (int k = expr.min_order(); k < 0; ++k) {
    const double mag = LambdaRing<Ring>::magnitude(expr[k]);
    worst = std::max(worst, mag);
    if (mag >= tol)
      throw ResidualPoleError("order " + std::to_string(k) + " keeps magnitude " + std::to_string(mag));
  }
  if (max_residual) *max_residual = worst;
  return expr[0];
}

template <class Ring>
DeformationOutcome<Ring> deform_product(std::span<const DeformedFactor> factors, double tol) {
  using R = LambdaRing<Ring>;
  if (factors.size() > 2) throw UnsupportedOrder("the deformation rule covers at most two Eisenstein factors");
  // every product coefficient is needed through the total pole order
  int poles = 1, logs = 0;
  for (const auto& f : factors) {
    logs += f.deriv_order;
    if (f.kind == FactorKind::regularized && near(f.s0, 0.5)) poles += f.deriv_order + 1;
  }
  const int K = poles + logs + 1;

  std::vector<DeformTerm<Ring>> prod{{-0.5, 0, 0, constant_series<Ring>(R::rational(1), K)}};
  Series<Ring> P = constant_series<Ring>(R::rational(1), K);
  for (const auto& f : factors) {
    auto fd = factor_data<Ring>(f, K);
    std::vector<DeformTerm<Ring>> next;
    for (const auto& a : prod)
      for (const auto& b : fd.terms)
        add_term(next, {a.alpha0 + b.alpha0 + 0.5, a.rate + b.rate, a.n + b.n, a.c * b.c});
    prod = std::move(next);
    P = P * fd.constant_part;
  }

  Series<Ring> expr = P;
  for (const auto& t : prod) {
    const bool at_half = near(t.alpha0, 0.5);
    if (t.rate == 0) {
      if (at_half || (near(t.alpha0, -0.5) && t.n > 0))
        throw DomainError("a singular exponent does not move; give the factors distinct rates");
      continue;
    }
    if (at_half) expr = expr + t.c * lambda_F_series<Ring>(t.n, 0.0, t.rate, K);
  }

  DeformationOutcome<Ring> out;
  out.value = deform_limit(expr, tol, &out.max_residual) * R::L(-1);
  out.expression = std::move(expr);
  out.exponents = std::move(prod);
  return out;
}

template Poly deform_limit<Poly>(const Laurent<Poly>&, double, double*);
template cplx deform_limit<cplx>(const Laurent<cplx>&, double, double*);
template DeformationOutcome<Poly> deform_product<Poly>(std::span<const DeformedFactor>, double);
template DeformationOutcome<cplx> deform_product<cplx>(std::span<const DeformedFactor>, double);

}  // namespace regint
