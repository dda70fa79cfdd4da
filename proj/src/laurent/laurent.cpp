#include "regint/laurent.hpp"

#include <cmath>

namespace regint {
namespace {

constexpr double kTheta0 = 0.1234567;  // keeps nodes off the real axis

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (cplx c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TruncatedLaurent series_div(const TruncatedLaurent& a, const TruncatedLaurent& b) {
  if (a.center() != b.center()) throw CenterMismatch("series have different centers");
  const double scale = max_abs(b.coeffs());
  if (scale == 0.0) throw DivisionByZeroSeries("divisor is identically zero");
  const auto bt = b.trimmed([&](cplx c) { return std::abs(c) <= kSeriesZeroTol * scale; });
  if (std::abs(bt.coeffs().front()) <= kSeriesZeroTol * scale)
    throw DivisionByZeroSeries("divisor vanishes to working order");
  const auto& bc = bt.coeffs();
  const std::size_t m = bc.size();
  std::vector<cplx> inv(m);
  inv[0] = 1.0 / bc[0];
  for (std::size_t k = 1; k < m; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += bc[j] * inv[k - j];
    inv[k] = -acc * inv[0];
  }
  return a * TruncatedLaurent(b.center(), -bt.min_order(), std::move(inv));
}

TruncatedLaurent series_arith(const TruncatedLaurent& a, const TruncatedLaurent& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add: return a + b;
    case SeriesOp::mul: return a * b;
    case SeriesOp::div: return series_div(a, b);
  }
  throw std::invalid_argument("unknown series operation");
}

cplx residue(const TruncatedLaurent& a) {
  if (a.max_order() < -1) throw OrderRangeError("residue needs working order >= -1");
  return a[-1];
}

cplx holomorphic_part_value(const TruncatedLaurent& a) {
  if (a.max_order() < 0) throw OrderRangeError("holomorphic part needs working order >= 0");
  return a[0];
}

std::vector<cplx> contour_nodes(cplx center, double radius, int count) {
  std::vector<cplx> nodes(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    nodes[std::size_t(j)] = center + radius * std::polar(1.0, kTheta0 + 2.0 * kPi * j / count);
  return nodes;
}

TruncatedLaurent laurent_from_samples(std::span<const cplx> samples, cplx center, double radius,
                                      int min_order, int n_terms) {
  const int count = int(samples.size());
  if (count < n_terms) throw OrderRangeError("too few contour samples");
  std::vector<cplx> coeffs(std::size_t(n_terms), 0.0);
  for (int j = 0; j < count; ++j) {
    const double theta = kTheta0 + 2.0 * kPi * j / count;
    for (int k = 0; k < n_terms; ++k) {
      const int order = min_order + k;
      coeffs[std::size_t(k)] += samples[std::size_t(j)] * std::polar(std::pow(radius, -order), -order * theta);
    }
  }
  for (auto& c : coeffs) c /= double(count);
  return TruncatedLaurent(center, min_order, std::move(coeffs));
}

TruncatedLaurent laurent_of(const AnalyticFn& f, cplx center, int min_order, int n_terms,
                            double radius, int nodes) {
  if (nodes < 8 || radius <= 0.0) throw OrderRangeError("bad contour parameters");
  const auto pts = contour_nodes(center, radius, 2 * nodes);
  std::vector<cplx> fine(pts.size()), coarse(static_cast<std::size_t>(nodes));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    try {
      fine[j] = f(pts[j]);
    } catch (const std::domain_error& e) {
      throw ContourError(std::string("evaluation failed on contour: ") + e.what());
    }
    if (!std::isfinite(fine[j].real()) || !std::isfinite(fine[j].imag()))
      throw ContourError("non-finite sample on contour");
  }
  for (int j = 0; j < nodes; ++j) coarse[std::size_t(j)] = fine[std::size_t(2 * j)];
  const auto a = laurent_from_samples(fine, center, radius, min_order, n_terms);
  const auto b = laurent_from_samples(coarse, center, radius, min_order, n_terms);
  const double scale = std::max(max_abs(fine), 1e-300);
  for (int k = 0; k < n_terms; ++k) {
    const int order = min_order + k;
    const double diff = std::abs(a[order] - b[order]) * std::pow(radius, order);
    if (diff > 1e-8 * scale)
      throw ContourError("contour refinement disagrees at order " + std::to_string(order));
  }
  int lead = min_order;
  while (lead < a.max_order() && std::abs(a[lead]) * std::pow(radius, lead) <= kSeriesZeroTol * scale) ++lead;
  return TruncatedLaurent(center, lead, {a.coeffs().begin() + (lead - min_order), a.coeffs().end()});
}

}  // namespace regint

namespace regint {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

LambdaLaurentData compute_lambda_data() {
  LambdaLaurentData d;
  const int terms = 20;
  const auto lf = laurent_of([](cplx s) { return lambda_F(s); }, 0.0, -1, 2, 0.1);
  d.residue = lf[-1].real();
  // lambda_F - L/s is analytic well past |s| = 1/2, so a wide circle keeps
  // the higher Taylor coefficients accurate
  const double L = d.residue;
  const auto hol = laurent_of([L](cplx s) { return lambda_F(s) - L / s; }, 0.0, 0, terms, 1.0);
  const auto lt = laurent_of([](cplx s) { return lambda_tilde(s); }, 0.0, 0, terms, 0.2);
  for (int k = 0; k < terms; ++k) {
    d.ell.push_back(hol[k].real() * factorial(k));
    d.m.push_back(lt[k].real() * factorial(k));
  }
  return d;
}

}  // namespace

const LambdaLaurentData& lambda_laurent_data() {
  static const LambdaLaurentData data = compute_lambda_data();
  return data;
}

cplx lambda_F_deriv(int k, cplx u) {
  if (k < 0) throw OrderRangeError("negative derivative order");
  if (u == cplx(0.0)) throw PoleError("lambda_F derivative at 0");
  const double L = lambda_laurent_data().residue;
  // pole part handled in closed form; the remainder is analytic for |u| < 1/2
  const auto hol = [L](cplx v) { return lambda_F(v) - L / v; };
  // keep the contour 0.05 away from v = 0, where hol is a difference of large terms
  const double d = std::abs(u);
  const double r = d <= 0.2 ? d + 0.05 : std::min(0.1, 0.5 * std::abs(u + 0.5));
  const auto series = laurent_of(hol, u, 0, k + 1, r, 128);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * factorial(k) * L / std::pow(u, k + 1) + series[k] * factorial(k);
}

cplx lambda_tilde_deriv(int k, cplx s) {
  if (k < 0) throw OrderRangeError("negative derivative order");
  const double dist = std::min(std::abs(s - 0.5), std::abs(s + 0.5));
  if (dist == 0.0) throw PoleError("lambda_tilde derivative at +-1/2");
  const double r = std::min(0.1, 0.5 * dist);
  const auto series = laurent_of([](cplx v) { return lambda_tilde(v); }, s, 0, k + 1, r, 128);
  return series[k] * factorial(k);
}

}  // namespace regint
