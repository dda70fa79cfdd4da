#include "regint/pairings.hpp"

#include <cmath>
#include <limits>

#include "regint/errors.hpp"

namespace regint {
namespace {

constexpr double kExpTol = 1e-9;

void check_orders(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw UnsupportedOrder("negative derivative order");
  if (n1 + n2 > kMaxPairingOrder)
    throw UnsupportedOrder("n1 + n2 = " + std::to_string(n1 + n2) + " exceeds the working order");
}

void check_rates(std::pair<int, int> r) {
  if (r.first == 0 || r.second == 0 || r.first == r.second || r.first == -r.second)
    throw DomainError("deformation rates must be nonzero and distinct up to sign");
}

PairingFormula run_engine(std::string label, const DeformedFactor& a, const DeformedFactor& b) {
  const DeformedFactor fs[] = {a, b};
  auto out = deform_product<Poly>(fs);
  return {std::move(label), std::move(out.value), out.max_residual};
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

void validate(const PairingRequest& req) {
  validate(req.left);
  validate(req.right);
  if (req.mode == PairingMode::unitary_axis) {
    if (req.left.s0 != cplx(0.0) || req.right.s0 != cplx(0.0) || req.left.regularized || req.right.regularized)
      throw DomainError("unitary pairings take E^{(n)}(0) factors");
  } else {
    if (req.left.s0 != cplx(0.5) || req.right.s0 != cplx(0.5) || !req.left.regularized || !req.right.regularized)
      throw DomainError("singular pairings take E^{reg,(n)}(1/2) factors");
  }
  check_orders(req.left.deriv_order, req.right.deriv_order);
}

PairingRequest unitary_request(int n1, int n2) {
  return {{0.0, n1, false}, {0.0, n2, false}, PairingMode::unitary_axis};
}

PairingRequest singular_request(int n1, int n2) {
  return {{0.5, n1, true}, {0.5, n2, true}, PairingMode::singular_point};
}

std::vector<FormulaTerm> PairingFormula::terms() const {
  std::vector<FormulaTerm> out;
  for (const auto& [mono, c] : expression.terms()) out.push_back({Poly::monomial_name(mono), c});
  return out;
}

PairingFormula rip_unitary(int n1, int n2, std::pair<int, int> rates) {
  check_orders(n1, n2);
  check_rates(rates);
  return run_engine("unitary(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                    {FactorKind::plain, 0.0, n1, rates.first}, {FactorKind::plain, 0.0, n2, rates.second});
}

PairingFormula rip_singular(int n1, int n2, std::pair<int, int> rates) {
  check_orders(n1, n2);
  check_rates(rates);
  return run_engine("singular(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                    {FactorKind::regularized, 0.5, n1, rates.first},
                    {FactorKind::regularized, 0.5, n2, rates.second});
}

PairingFormula pairing_formula(const PairingRequest& req, std::pair<int, int> rates) {
  validate(req);
  return req.mode == PairingMode::unitary_axis ? rip_unitary(req.left.deriv_order, req.right.deriv_order, rates)
                                               : rip_singular(req.left.deriv_order, req.right.deriv_order, rates);
}

PairingFormula unitary_11_fixture() {
  const Poly Li = Poly::L(-1);
  Poly e = Poly(4) * Li * Poly::ell(2) + Poly(4) * Li * Poly::ell(2) * Poly::m(1) +
           Li * Poly::ell(0) * Poly::m(1) * Poly::m(1) - Poly(Rational(1, 3)) * Poly::m(3) -
           Poly::m(2) * Poly::m(1);
  return {"unitary(1,1) fixture", std::move(e), 0.0};
}

PairingComparison compare_with_oracles(const PairingRequest& req, RegularizeOptions opts) {
  PairingComparison out;
  out.formula = pairing_formula(req).value();
  const auto phi = sample_product({req.left, req.right});
  out.residue_oracle = regularized_integral(phi, opts).total;
  out.subtraction_oracle = subtraction_oracle(phi, {opts.T, opts.nx, opts.panel_nodes});
  out.max_delta = std::max(std::abs(out.residue_oracle - out.formula), std::abs(out.subtraction_oracle - out.formula));
  return out;
}

cplx simple_product_unitary(cplx s, int n2) {
  const DeformedFactor fs[] = {{FactorKind::plain, s, 0, 0}, {FactorKind::plain, 0.0, n2, 1}};
  return deform_product<cplx>(fs).value;
}

cplx simple_product_singular(int n1, int n2, cplx s) {
  const DeformedFactor fs[] = {{FactorKind::regularized, 0.5 + s, n1, 0}, {FactorKind::regularized, 0.5, n2, 1}};
  return deform_product<cplx>(fs).value;
}

cplx single_regularized(int n, cplx s) {
  const DeformedFactor fs[] = {{FactorKind::regularized, 0.5 + s, n, s == cplx(0.0) ? 1 : 0}};
  return deform_product<cplx>(fs).value;
}

double exponent_bound(const ExponentSet& e) {
  double theta = -std::numeric_limits<double>::infinity();
  for (const auto& t : e.terms()) theta = std::max(theta, t.alpha.real());
  return theta;
}

cplx R_phi_f(cplx s, const AutomorphicSample& phi, RMethod method, RegularizeOptions opts) {
  if (method == RMethod::truncation) return Regularizer(phi, opts).R(s);
  const double theta = exponent_bound(phi.exponents);
  if (!(theta < s.real() && s.real() < -theta))
    throw StripViolation("Re s = " + std::to_string(s.real()) + " outside (" + std::to_string(theta) + ", " +
                         std::to_string(-theta) + ")");
  const auto prod = sample_times(phi, sample_product({{s, 0, false}}));
  return plain_integral(prod, {opts.T, opts.nx, opts.panel_nodes});
}

TripleToDoubleResult triple_to_double(int n, const AutomorphicSample& phi, RegularizeOptions opts) {
  if (n < 0) throw UnsupportedOrder("negative derivative order");
  const auto& d = lambda_laurent_data();
  TripleToDoubleResult out;
  out.exponent_sum = 0.0;
  for (const auto& t : phi.exponents.terms()) {
    const double re = t.alpha.real();
    if (re > -0.5 + kExpTol) throw DomainError("triple_to_double needs Re alpha <= -1/2");
    if (std::abs(t.alpha + 0.5) > kExpTol) {
      if (re > -0.5 - kExpTol) throw DomainError("exponent on Re alpha = -1/2 away from -1/2");
      continue;
    }
    const auto k = std::size_t(t.n + n);
    if (k >= d.ell.size()) throw UnsupportedOrder("log power beyond the lambda table");
    out.exponent_sum += t.c * d.ell[k] / d.residue;
  }
  Regularizer reg(phi, opts);
  out.hol_derivative = factorial(n) * reg.laurent_at_half(n)[n];
  out.integral_phi = reg.integral().total;
  out.pairing = out.hol_derivative - d.ell[std::size_t(n)] * out.integral_phi + out.exponent_sum;
  return out;
}

cplx completed_E_at_zero(UpperHalfPoint z) {
  const auto f = [z](cplx s) { return completed_lambda(1.0 + 2.0 * s) * eval_E(z, s); };
  return laurent_of(f, 0.0, 0, 1, 0.1, 32)[0];
}

double completed_lambda_residue() {
  return laurent_of([](cplx s) { return completed_lambda(s); }, 1.0, -1, 2, 0.25)[-1].real();
}

AutomorphicSample unitary_square_residual(double tol) {
  const double m1 = lambda_laurent_data().m[1];
  const EisensteinSpec F{0.0, 1, false};
  auto phi = sample_combination({{0.25, {F, F}},
                                 {-1.0, {{0.5, 2, true}}},
                                 {-m1, {{0.5, 1, true}}},
                                 {-0.25 * m1 * m1, {{0.5, 0, true}}}},
                                0.0, tol);
  // the t log^k t parts cancel up to rounding; drop them from the declaration
  for (const auto& t : std::vector<ExponentTerm>(phi.exponents.terms()))
    if (std::abs(t.alpha - 0.5) < kExpTol) {
      if (std::abs(t.c) > 1e-8) throw DomainError("growth at the cusp does not cancel");
      phi.exponents.remove(t.alpha, t.n);
    }
  phi.label = "E*(0)^2 minus cusp growth";
  return phi;
}

TripleProductResult triple_product(int n, RegularizeOptions opts) {
  if (n < 0 || n > 2) throw UnsupportedOrder("triple product implemented for n <= 2");
  const double m1 = lambda_laurent_data().m[1];
  TripleProductResult out;
  out.detail = triple_to_double(n, unitary_square_residual(), opts);
  out.triple_part = out.detail.pairing;
  out.pairing_part = rip_singular(2, n).value() + m1 * rip_singular(1, n).value() +
                     0.25 * m1 * m1 * rip_singular(0, n).value();
  out.value = out.triple_part + out.pairing_part;
  return out;
}

cplx triple_product_direct(int n, RegularizeOptions opts) {
  if (n < 0 || n > 2) throw UnsupportedOrder("triple product implemented for n <= 2");
  const EisensteinSpec F{0.0, 1, false};
  const auto phi = sample_combination({{0.25, {F, F, {0.5, n, true}}}});
  return regularized_integral(phi, opts).total;
}

}  // namespace regint
