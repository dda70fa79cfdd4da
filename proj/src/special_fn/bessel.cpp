#include <cmath>

#include "regint/errors.hpp"
#include "regint/special_fn.hpp"

namespace regint {
namespace {

// Smallest t past the peak of exp(-x cosh t + |Re nu| t) where the integrand
// has dropped by e^{-40} relative to that peak.
double cutoff(double x, double re_nu_abs) {
  const double peak = re_nu_abs > x ? std::asinh(re_nu_abs / x) : 0.0;
  const auto phase = [&](double t) { return x * std::cosh(t) - re_nu_abs * t; };
  const double floor_value = phase(peak) + 40.0;
  double lo = peak, hi = peak + 1.0;
  while (phase(hi) < floor_value) hi = peak + 2.0 * (hi - peak);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phase(mid) < floor_value ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

cplx bessel_k(cplx nu, double x) {
  require_finite(nu, "bessel_k");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k needs x > 0");
  const double h = 0.1;
  const double t_max = cutoff(x, std::abs(nu.real()));
  // Shift the exponent by its value at the peak to avoid underflow at large x.
  const double peak = std::abs(nu.real()) > x ? std::asinh(std::abs(nu.real()) / x) : 0.0;
  const double shift = x * std::cosh(peak) - std::abs(nu.real()) * peak;
  cplx sum = 0.5 * std::exp(-x + shift);
  for (int k = 1;; ++k) {
    const double t = k * h;
    if (t > t_max) break;
    sum += std::exp(-x * std::cosh(t) + shift) * std::cosh(nu * t);
  }
  return h * sum * std::exp(-shift);
}

BesselKBatch::BesselKBatch(std::span<const cplx> orders, double x_min, double step)
    : orders_(orders.begin(), orders.end()), x_min_(x_min), step_(step) {
  if (!(x_min > 0.0)) throw DomainError("BesselKBatch needs x_min > 0");
  double re_max = 0.0;
  for (cplx nu : orders_) {
    require_finite(nu, "BesselKBatch");
    re_max = std::max(re_max, std::abs(nu.real()));
  }
  nodes_ = static_cast<std::size_t>(std::ceil(cutoff(x_min, re_max) / step_)) + 1;
  cosh_table_.resize(nodes_ * orders_.size());
  for (std::size_t k = 0; k < nodes_; ++k)
    for (std::size_t j = 0; j < orders_.size(); ++j)
      cosh_table_[k * orders_.size() + j] = std::cosh(orders_[j] * (double(k) * step_));
}

void BesselKBatch::fill(double x0, int nmax, std::span<cplx> out) const {
  if (x0 < x_min_ * (1.0 - 1e-12)) throw DomainError("BesselKBatch argument below x_min");
  const std::size_t J = orders_.size();
  if (out.size() < J * std::size_t(nmax)) throw DomainError("BesselKBatch output too small");
  std::fill(out.begin(), out.begin() + J * nmax, cplx(0.0));
  std::vector<double> base(nodes_);
  for (std::size_t k = 0; k < nodes_; ++k) base[k] = std::exp(-x0 * (std::cosh(double(k) * step_) - 1.0));
  // Factor e^{-n x0} is pulled out and reapplied so powers of base stay O(1).
  std::vector<double> power(nodes_, 1.0);
  for (int n = 1; n <= nmax; ++n) {
    for (std::size_t k = 0; k < nodes_; ++k) power[k] *= base[k];
    const double scale = step_ * std::exp(-double(n) * x0);
    for (std::size_t k = 0; k < nodes_; ++k) {
      const double weight = (k == 0 ? 0.5 : 1.0) * power[k];
      if (weight < 1e-300) break;
      const cplx* row = &cosh_table_[k * J];
      for (std::size_t j = 0; j < J; ++j) out[j * nmax + (n - 1)] += weight * row[j];
    }
    for (std::size_t j = 0; j < J; ++j) out[j * nmax + (n - 1)] *= scale;
  }
}

}  // namespace regint
