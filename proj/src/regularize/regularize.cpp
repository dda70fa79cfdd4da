#include "regint/regularize.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "regint/errors.hpp"

namespace regint {
namespace {

constexpr double kDegenerateTol = 1e-9;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Gauss-Legendre nodes for the cusp tail [T, T + 8] in two panels.
void tail_grid(double T, std::vector<double>& t, std::vector<double>& w) {
  using G = boost::math::quadrature::gauss<double, 16>;
  for (auto [a, b] : {std::pair{T, T + 3.0}, std::pair{T + 3.0, T + 8.0}}) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < G::abscissa().size(); ++i)
      for (double sign : {1.0, -1.0}) {
        t.push_back(mid + sign * half * G::abscissa()[i]);
        w.push_back(half * G::weights()[i]);
      }
  }
}

}  // namespace

cplx h_T(cplx s, const ExponentSet& terms, double T) {
  if (!(T > 1.0)) throw DomainError("h_T needs T > 1");
  const double lT = std::log(T);
  cplx total = 0.0;
  for (const auto& term : terms.terms()) {
    const cplx beta = s + term.alpha;
    if (std::abs(beta) < 1e-14) throw PoleError("h_T evaluated at s = -alpha");
    const cplx Tb = std::exp(beta * lT);
    cplx sum = 0.0;
    for (int m = 0; m <= term.n; ++m) {
      const double sign = ((term.n - m) % 2 == 0) ? 1.0 : -1.0;
      sum += sign * factorial(term.n) / factorial(m) * Tb * std::pow(lT, m) / std::pow(beta, term.n - m + 1);
    }
    total += term.c * sum;
  }
  return total;
}

std::vector<cplx> regularizing_kernel(const AutomorphicSample& phi, std::span<const double> t_grid, int quad_nodes) {
  std::vector<cplx> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("regularizing kernel needs t > 0");
    out.push_back(constant_term(phi, t, quad_nodes));
  }
  return out;
}

cplx truncate_E(UpperHalfPoint z, cplx s, double T) {
  if (!(T > 1.0)) throw DomainError("truncation needs T > 1");
  const EisensteinKernel k({s}, {{1.0}}, {0.0});
  cplx v;
  k.evaluate(std::span(&z, 1), std::span(&v, 1), T);
  return v;
}

cplx degenerate_part(const ExponentSet& e) {
  cplx d = 0.0;
  for (const auto& t : e.terms())
    if (t.n == 0 && std::abs(t.alpha + 0.5) <= kDegenerateTol) d += t.c;
  return d;
}

Regularizer::Regularizer(AutomorphicSample phi, RegularizeOptions opts) : phi_(std::move(phi)), opts_(opts) {
  if (!(opts_.T >= 2.0)) throw DomainError("regularization needs T >= 2");
  quad_ = DomainQuadrature::build(opts_.T + opts_.cusp_margin, {opts_.T}, opts_.nx, opts_.panel_nodes);
  pts_ = quad_.points();
  const auto w = quad_.weights();
  weighted_phi_.resize(pts_.size());
  phi_.batch(pts_, weighted_phi_);
  for (std::size_t i = 0; i < w.size(); ++i) weighted_phi_[i] *= w[i];
  tail_grid(opts_.T, tail_t_, tail_w_);
  const auto a = regularizing_kernel(phi_, tail_t_);
  for (std::size_t i = 0; i < tail_t_.size(); ++i) {
    const cplx f = phi_.exponents.evaluate(tail_t_[i]);
    tail_diff_.push_back(a[i] - f);
    tail_misfit_ = std::max(tail_misfit_, std::abs(a[i] - f) / std::max(1.0, std::abs(f)));
  }
}

std::vector<cplx> Regularizer::truncated_pairing(std::span<const cplx> s) const {
  const std::size_t J = s.size();
  std::vector<std::vector<cplx>> w(J, std::vector<cplx>(J, 0.0));
  for (std::size_t j = 0; j < J; ++j) w[j][j] = 1.0;
  const EisensteinKernel k({s.begin(), s.end()}, std::move(w), std::vector<cplx>(J, 0.0));
  std::vector<cplx> vals(pts_.size() * J);
  k.evaluate(pts_, vals, opts_.T);
  std::vector<cplx> out(J, 0.0);
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (std::size_t j = 0; j < J; ++j) out[j] += weighted_phi_[i] * vals[i * J + j];
  return out;
}

cplx Regularizer::tail(cplx s) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < tail_t_.size(); ++i)
    sum += tail_w_[i] * tail_diff_[i] * std::exp((s - 1.5) * std::log(tail_t_[i]));
  return sum;
}

cplx Regularizer::analytic_part(cplx s) const {
  const double T = opts_.T;
  return tail(s) + lambda_tilde(s) * (tail(-s) - h_T(-s, phi_.exponents, T)) - h_T(s, phi_.exponents, T);
}

cplx Regularizer::R(cplx s) const {
  const cplx one[] = {s};
  return truncated_pairing(one)[0] + analytic_part(s);
}

cplx Regularizer::R_star(cplx s) const { return completed_lambda(1.0 + 2.0 * s) * R(s); }

double Regularizer::residue_radius() const {
  double r = opts_.residue_radius;
  for (const auto& t : phi_.exponents.terms())
    for (double d : {std::abs(0.5 - t.alpha), std::abs(0.5 + t.alpha)})
      if (d > kDegenerateTol) r = std::min(r, 0.5 * d);
  return r;
}

TruncatedLaurent Regularizer::laurent_at_half(int max_order, double* contour_error) const {
  if (max_order < -1) throw OrderRangeError("Laurent data at 1/2 needs max_order >= -1");
  const double r = residue_radius();
  const int M = opts_.contour_nodes;
  const auto nodes = contour_nodes(0.5, r, M);
  // outputs: orders -2 .. max_order, then a coarse residue from even nodes
  const int lo = -2, K = max_order - lo + 1;
  std::vector<std::vector<cplx>> w(std::size_t(K) + 1, std::vector<cplx>(std::size_t(M), 0.0));
  for (int j = 0; j < M; ++j) {
    const cplx d = nodes[std::size_t(j)] - 0.5;
    for (int k = 0; k < K; ++k) w[std::size_t(k)][std::size_t(j)] = std::pow(d, -(lo + k)) / double(M);
    if (j % 2 == 0) w[std::size_t(K)][std::size_t(j)] = d * (2.0 / M);
  }
  const EisensteinKernel kernel(nodes, std::move(w), std::vector<cplx>(std::size_t(K) + 1, 0.0));
  std::vector<cplx> vals(pts_.size() * std::size_t(K + 1));
  kernel.evaluate(pts_, vals, opts_.T);
  std::vector<cplx> coeffs(std::size_t(K) + 1, 0.0);
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (int k = 0; k <= K; ++k) coeffs[std::size_t(k)] += weighted_phi_[i] * vals[i * std::size_t(K + 1) + std::size_t(k)];
  if (contour_error) *contour_error = std::abs(coeffs[1] - coeffs[std::size_t(K)]);
  coeffs.pop_back();
  const TruncatedLaurent pairing(0.5, lo, coeffs);

  int n_max = 0;
  for (const auto& t : phi_.exponents.terms()) n_max = std::max(n_max, t.n);
  const int g_lo = -(n_max + 2);
  const auto g = laurent_of([this](cplx z) { return analytic_part(z); }, 0.5, g_lo, max_order - g_lo + 1, r, 128);
  return pairing + g;
}

RegularizedIntegralResult Regularizer::integral() const {
  if (tail_misfit_ > 1e-6)
    throw NonRegularizable("constant term does not match the declared exponents (misfit " +
                           std::to_string(tail_misfit_) + ")");
  RegularizedIntegralResult res;
  double err = 0.0;
  const auto ser = laurent_at_half(0, &err);
  res.principal = residue(ser);
  res.degenerate = degenerate_part(phi_.exponents);
  res.total = (res.principal + res.degenerate) / lambda_laurent_data().residue;
  res.diagnostics.max_pole_order = -ser.min_order();
  res.diagnostics.T = opts_.T;
  res.diagnostics.residue_radius = residue_radius();
  res.diagnostics.contour_error = err;
  res.diagnostics.tail_size = tail_misfit_;
  return res;
}

cplx R_of(cplx s, const AutomorphicSample& phi, double T) {
  RegularizeOptions o;
  o.T = T;
  return Regularizer(phi, o).R(s);
}

RegularizedIntegralResult regularized_integral(const AutomorphicSample& phi, RegularizeOptions opts) {
  return Regularizer(phi, opts).integral();
}

SubtractionPlan plan_subtraction(const ExponentSet& e) {
  SubtractionPlan plan;
  plan.residual = e;
  for (int guard = 0; guard < 200; ++guard) {
    const ExponentTerm* lead = nullptr;
    for (const auto& t : plan.residual.terms())
      if (t.alpha.real() > 0.0 && (!lead || t.n > lead->n)) lead = &t;
    if (!lead) return plan;
    const ExponentTerm top = *lead;
    const bool at_half = std::abs(top.alpha - 0.5) <= kDegenerateTol;
    const EisensteinSpec spec = at_half ? EisensteinSpec{0.5, top.n, true} : EisensteinSpec{top.alpha, top.n, false};
    plan.residual = plan.residual + (-top.c) * exponent_set_of(spec);
    plan.residual.remove(top.alpha, top.n);
    plan.pieces.push_back({top.c, {spec}});
  }
  throw ConvergenceError("subtraction plan did not terminate");
}

cplx cusp_tail_integral(const ExponentSet& e, double T) {
  const double lT = std::log(T);
  cplx total = 0.0;
  for (const auto& t : e.terms()) {
    const cplx g = t.alpha - 0.5;
    if (g.real() >= 0.0) throw IntegrabilityError("exponent with Re alpha >= 1/2 is not integrable");
    // I_n = -T^g log^n T / g - (n / g) I_{n-1}
    const cplx Tg = std::exp(g * lT);
    cplx I = -Tg / g;
    for (int k = 1; k <= t.n; ++k) I = -Tg * std::pow(lT, k) / g - (double(k) / g) * I;
    total += t.c * I;
  }
  return total;
}

cplx plain_integral(const AutomorphicSample& phi, OracleOptions opts) {
  for (const auto& t : phi.exponents.terms())
    if (t.alpha.real() >= 0.5) throw IntegrabilityError("sample is not integrable over the fundamental domain");
  const auto q = DomainQuadrature::build(opts.T, {}, opts.nx, opts.panel_nodes);
  const auto vals = evaluate_on(phi, q);
  const auto w = q.weights();
  cplx sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * vals[i];
  return sum + cusp_tail_integral(phi.exponents, opts.T);
}

cplx subtraction_oracle(const AutomorphicSample& phi, OracleOptions opts) {
  auto plan = plan_subtraction(phi.exponents);
  if (plan.pieces.empty()) return plain_integral(phi, opts);
  auto residue_sample = sample_combination(std::move(plan.pieces));
  auto diff = sample_scaled_sum(1.0, phi, -1.0, residue_sample);
  diff.exponents = plan.residual;
  return plain_integral(diff, opts);
}

}  // namespace regint
