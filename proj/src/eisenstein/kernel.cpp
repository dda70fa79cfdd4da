#include <algorithm>
#include <cmath>
#include <numeric>

#include "regint/eisenstein.hpp"
#include "regint/errors.hpp"
#include "regint/laurent.hpp"

namespace regint {
namespace {

constexpr int kCauchyNodes = 64;
constexpr double kCauchyRadius = 0.1;
constexpr double kRowYMin = kSqrt3Over2 * (1.0 - 1e-9);

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct NodeCombination {
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  cplx shift = 0.0;
};

// Weights for f^{(n)}(center) from samples on a circle.
NodeCombination cauchy(cplx center, double radius, int n) {
  NodeCombination out;
  out.nodes = contour_nodes(center, radius, kCauchyNodes);
  const double scale = factorial(n) / kCauchyNodes;
  for (cplx node : out.nodes) out.weights.push_back(scale * std::pow(node - center, -n));
  return out;
}

// Shrinks near the pole at s = 1/2.
double plain_radius(cplx s0) { return std::min(kCauchyRadius, 0.5 * std::abs(s0 - 0.5)); }

// Radius for the regularized circle around u0, kept clear of u = 0 so the
// subtraction E - lambda_F is never sampled near the pole.
double reg_radius(cplx u0) {
  const double d = std::abs(u0);
  for (double r : {0.1, 0.06, 0.15})
    if (std::abs(d - r) >= 0.03) return r;
  return 0.1;
}

NodeCombination combination_of(const EisensteinSpec& spec) {
  validate(spec);
  if (!spec.regularized) {
    if (spec.deriv_order == 0) return {{spec.s0}, {1.0}, 0.0};
    return cauchy(spec.s0, plain_radius(spec.s0), spec.deriv_order);
  }
  const cplx u0 = spec.s0 - 0.5;
  if (spec.deriv_order == 0 && std::abs(u0) >= 0.03) return {{spec.s0}, {1.0}, -lambda_F(u0)};
  auto c = cauchy(u0, reg_radius(u0), spec.deriv_order);
  for (std::size_t j = 0; j < c.nodes.size(); ++j) {
    c.shift -= c.weights[j] * lambda_F(c.nodes[j]);
    c.nodes[j] += 0.5;
  }
  return c;
}

}  // namespace

void validate(const EisensteinSpec& spec) {
  require_finite(spec.s0, "EisensteinSpec");
  if (spec.deriv_order < 0) throw OrderRangeError("negative derivative order");
  if (spec.regularized) {
    if (std::abs(spec.s0 - 0.5) >= 0.25) throw DomainError("regularized series needs |s0 - 1/2| < 1/4");
  } else {
    const double reach = spec.deriv_order == 0 ? 1e-12 : 0.02;
    if (std::abs(spec.s0 - 0.5) <= reach) throw PoleError("E has a pole at s = 1/2");
  }
}

EisensteinKernel::EisensteinKernel(std::vector<cplx> nodes, std::vector<std::vector<cplx>> weights,
                                   std::vector<cplx> shifts, double tol)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), shifts_(std::move(shifts)), tol_(tol) {
  if (!(tol > 1e-15)) throw ConvergenceError("tolerance below the double precision floor");
  if (weights_.size() != shifts_.size()) throw std::invalid_argument("weights and shifts disagree");
  for (const auto& w : weights_)
    if (w.size() != nodes_.size()) throw std::invalid_argument("weight row length mismatch");
  for (cplx s : nodes_) {
    require_finite(s, "EisensteinKernel");
    if (std::abs(s - 0.5) < 1e-12) throw PoleError("E has a pole at s = 1/2");
    w_abs_max_ = std::max(w_abs_max_, std::abs(s + 0.5));
  }
  n_max_ = fourier_terms(kRowYMin);
  const std::size_t J = nodes_.size();
  scatter_.resize(J);
  coeff_.assign(J * std::size_t(n_max_), 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    const cplx s = nodes_[j];
    scatter_[j] = lambda_tilde(s);
    const cplx inv_xi = inv_completed_lambda(1.0 + 2.0 * s);
    for (int n = 1; n <= n_max_; ++n) {
      cplx sigma = 0.0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) sigma += std::exp(-2.0 * s * std::log(double(d)));
      coeff_[j * n_max_ + n - 1] = 4.0 * std::exp(s * std::log(double(n))) * sigma * inv_xi;
    }
  }
  bessel_ = std::make_unique<BesselKBatch>(nodes_, 2.0 * kPi * kRowYMin);
}

int EisensteinKernel::fourier_terms(double y) const {
  return int(std::ceil((w_abs_max_ + 10.0) / y)) + 10;
}

EisensteinKernel EisensteinKernel::from_specs(std::span<const EisensteinSpec> specs, double tol) {
  std::vector<NodeCombination> parts;
  std::size_t total = 0;
  for (const auto& spec : specs) {
    parts.push_back(combination_of(spec));
    total += parts.back().nodes.size();
  }
  std::vector<cplx> nodes;
  std::vector<std::vector<cplx>> weights(parts.size(), std::vector<cplx>(total, 0.0));
  std::vector<cplx> shifts;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::size_t offset = nodes.size();
    nodes.insert(nodes.end(), parts[k].nodes.begin(), parts[k].nodes.end());
    std::copy(parts[k].weights.begin(), parts[k].weights.end(), weights[k].begin() + offset);
    shifts.push_back(parts[k].shift);
  }
  return EisensteinKernel(std::move(nodes), std::move(weights), std::move(shifts), tol);
}

void EisensteinKernel::evaluate_row(double y, std::span<const double> xs, std::span<cplx> out,
                                    bool drop_constant) const {
  if (y < kRowYMin) throw DomainError("row height below the fundamental domain");
  const std::size_t J = nodes_.size(), K = shifts_.size();
  const int N = std::min(fourier_terms(y), n_max_);
  std::vector<cplx> kt(J * std::size_t(N));
  bessel_->fill(2.0 * kPi * y, N, kt);
  // B[k][n] = sum_j W[k][j] coeff_j(n) K_j(n)
  std::vector<cplx> prod(J * std::size_t(N));
  for (std::size_t j = 0; j < J; ++j)
    for (int n = 0; n < N; ++n) prod[j * N + n] = coeff_[j * n_max_ + n] * kt[j * N + n];
  std::vector<cplx> B(K * std::size_t(N), 0.0), C(K, 0.0);
  const double ly = std::log(y);
  std::vector<cplx> cterm(J);
  for (std::size_t j = 0; j < J; ++j) {
    const cplx w = 0.5 + nodes_[j];
    cterm[j] = drop_constant ? cplx(0.0) : std::exp(w * ly) + scatter_[j] * std::exp((1.0 - w) * ly);
  }
  for (std::size_t k = 0; k < K; ++k) {
    C[k] = shifts_[k];
    const auto& wk = weights_[k];
    for (std::size_t j = 0; j < J; ++j) {
      if (wk[j] == cplx(0.0)) continue;
      C[k] += wk[j] * cterm[j];
      for (int n = 0; n < N; ++n) B[k * N + n] += wk[j] * prod[j * N + n];
    }
  }
  const double sy = std::sqrt(y);
  std::vector<double> cosines(std::size_t(N) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c1 = std::cos(2.0 * kPi * xs[i]);
    cosines[0] = 1.0;
    if (N >= 1) cosines[1] = c1;
    for (int n = 2; n <= N; ++n) cosines[n] = 2.0 * c1 * cosines[n - 1] - cosines[n - 2];
    for (std::size_t k = 0; k < K; ++k) {
      cplx acc = 0.0;
      for (int n = 0; n < N; ++n) acc += B[k * N + n] * cosines[n + 1];
      out[i * K + k] = C[k] + sy * acc;
    }
  }
}

void EisensteinKernel::evaluate(std::span<const UpperHalfPoint> pts, std::span<cplx> out, double truncate_T) const {
  const std::size_t K = shifts_.size();
  if (out.size() < pts.size() * K) throw std::invalid_argument("output span too small");
  std::vector<UpperHalfPoint> red(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) red[i] = reduce_to_fundamental_domain(pts[i]).first;
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return red[a].y < red[b].y; });
  std::vector<double> xs;
  std::vector<cplx> buf;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    const double y = red[order[lo]].y;
    xs.clear();
    while (hi < order.size() && red[order[hi]].y == y) xs.push_back(red[order[hi++]].x);
    buf.resize(xs.size() * K);
    evaluate_row(y, xs, buf, y > truncate_T);
    for (std::size_t i = lo; i < hi; ++i)
      std::copy_n(buf.begin() + (i - lo) * K, K, out.begin() + order[i] * K);
    lo = hi;
  }
}

cplx eval_spec(UpperHalfPoint z, const EisensteinSpec& spec, double tol) {
  const auto kernel = EisensteinKernel::from_specs(std::span(&spec, 1), tol);
  cplx v;
  kernel.evaluate(std::span(&z, 1), std::span(&v, 1));
  return v;
}

cplx eval_E(UpperHalfPoint z, cplx s, double tol) { return eval_spec(z, {s, 0, false}, tol); }
cplx eval_E_deriv(UpperHalfPoint z, cplx s0, int n, double tol) { return eval_spec(z, {s0, n, false}, tol); }
cplx eval_E_reg(UpperHalfPoint z, cplx s, int n, double tol) { return eval_spec(z, {s, n, true}, tol); }

}  // namespace regint
