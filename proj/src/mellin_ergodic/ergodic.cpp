#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "regint/errors.hpp"
#include "regint/mellin.hpp"

namespace regint {
namespace {

double dot(std::span<const double> a, std::span<const long long> n) {
  if (a.size() != n.size()) throw DomainError("theta and n have different lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * double(n[i]);
  return s;
}

cplx e(double x) { return std::polar(1.0, 2.0 * kPi * x); }

double phase_of(std::span<const double> x, std::span<const long long> n) { return x.empty() ? 0.0 : dot(x, n); }

}  // namespace

cplx ergodic_average(std::span<const double> theta, std::span<const long long> n, double T, std::span<const double> x) {
  if (!(T > 0)) throw DomainError("T must be positive");
  const double w = dot(theta, n);
  const cplx phase = e(phase_of(x, n));
  if (w == 0.0) return phase;
  return phase * (e(T * w) - 1.0) / (cplx(0.0, 2.0 * kPi) * T * w);
}

cplx ergodic_average_numeric(std::span<const double> theta, std::span<const long long> n, double T,
                             std::span<const double> x) {
  if (!(T > 0)) throw DomainError("T must be positive");
  const double w = dot(theta, n), x0 = phase_of(x, n);
  const double panels = std::ceil(std::abs(w) * T) + 1.0;
  if (panels > 1e7) throw BudgetExceeded("too many oscillations for the quadrature check");
  const int np = int(panels);
  cplx acc = 0.0;
  for (int k = 0; k < np; ++k)
    acc += boost::math::quadrature::gauss<double, 20>::integrate([&](double t) { return e(x0 + t * w); }, T * k / np,
                                                                 T * (k + 1) / np);
  return acc / T;
}

double ergodic_bound(std::span<const double> theta, std::span<const long long> n, double T) {
  if (!(T > 0)) throw DomainError("T must be positive");
  const double w = std::abs(dot(theta, n));
  return w == 0.0 ? kInfNorm : 2.0 / (T * w);
}

ConstancyVerdict detect_constant(std::vector<std::pair<cplx, double>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  double scale = 0.0;
  for (const auto& [a, th] : terms) scale = std::max(scale, std::abs(a));
  std::vector<std::pair<cplx, double>> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && std::abs(merged.back().second - t.second) <= 1e-12)
      merged.back().first += t.first;
    else
      merged.push_back(t);
  }
  ConstancyVerdict v;
  std::vector<std::pair<cplx, double>> osc;
  double energy = 0.0, th_min = kInfNorm, th_max = 0.0;
  for (const auto& [a, th] : merged) {
    if (std::abs(a) <= 1e-13 * scale) continue;
    if (std::abs(th) <= 1e-12) {
      v.value += a;
      continue;
    }
    osc.emplace_back(a, th);
    energy += std::norm(a);
    th_min = std::min(th_min, std::abs(th));
    th_max = std::max(th_max, std::abs(th));
  }
  if (osc.empty()) {
    v.constant = true;
    return v;
  }
  // f(x) with l = log x; the mean of |f(l) - f(0)|^2 over long ranges is at
  // least the oscillating energy, so some l beats half its square root
  auto f = [&](double l) {
    cplx s = v.value;
    for (const auto& [a, th] : osc) s += a * std::polar(1.0, th * l);
    return s;
  };
  v.gap = 0.5 * std::sqrt(energy);
  const cplx f0 = f(0.0);
  const double step = kPi / (8.0 * th_max);
  const double span = 64.0 * 2.0 * kPi / th_min;
  const long long steps = (long long)std::min(1e7, std::ceil(span / step));
  for (long long i = 1; i <= steps; ++i) {
    const double l = double(i) * step;
    if (std::abs(f(l) - f0) > v.gap) {
      v.log_x1 = 0.0;
      v.log_x2 = l;
      return v;
    }
  }
  throw ConvergenceError("no oscillation witness found in the scan window");
}

bool integrable_exponents(const ExponentSet& e) {
  for (const auto& t : e.terms())
    if (t.c != 0.0 && t.alpha.real() >= 0.5) return false;
  return true;
}

cplx tail_integral(const ExponentSet& e, double T) {
  if (!(T >= 1.0)) throw DomainError("tail integral needs T >= 1");
  const double L = std::log(T);
  cplx total = 0.0;
  for (const auto& t : e.terms()) {
    // int_0^L c e^{beta u} u^n du
    const cplx beta = t.alpha - 0.5;
    if (std::abs(beta) < 1e-12) {
      total += t.c * std::pow(L, t.n + 1) / double(t.n + 1);
      continue;
    }
    const cplx eb = std::exp(beta * L);
    cplx sum = 0.0;
    double fact_ratio = 1.0;  // n! / m!
    for (int m = t.n; m >= 0; --m) {
      const double sign = (t.n - m) % 2 ? -1.0 : 1.0;
      sum += sign * fact_ratio * eb * std::pow(L, m) / std::pow(beta, t.n - m + 1);
      fact_ratio *= m;
    }
    double nfact = 1.0;
    for (int k = 2; k <= t.n; ++k) nfact *= k;
    sum -= (t.n % 2 ? -1.0 : 1.0) * nfact / std::pow(beta, t.n + 1);
    total += t.c * sum;
  }
  return total;
}

TailFit tail_fit(const std::function<cplx(double)>& a, double u_start, double u_end) {
  if (!(u_end > u_start + 4.0)) throw DomainError("tail fit needs at least four windows");
  const int windows = int(std::floor(u_end - u_start));
  const int sub = 8;
  auto g = [&](double u) { return a(std::exp(u)) * std::exp(-u); };
  std::vector<double> us, logs;
  for (int k = 0; k < windows; ++k) {
    const double u0 = u_start + k;
    cplx run = 0.0;
    double mx = 0.0;
    for (int j = 0; j < sub; ++j) {
      run += boost::math::quadrature::gauss<double, 20>::integrate(g, u0 + double(j) / sub, u0 + double(j + 1) / sub);
      mx = std::max(mx, std::abs(run));
    }
    if (mx > 0.0) {
      us.push_back(u0);
      logs.push_back(std::log(mx));
    }
  }
  TailFit out;
  if (us.size() < 4) {  // the tail vanishes identically
    out.integrable = true;
    out.slope = -kInfNorm;
    return out;
  }
  const double n = double(us.size());
  double su = 0, sl = 0, suu = 0, sul = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    su += us[i], sl += logs[i], suu += us[i] * us[i], sul += us[i] * logs[i];
  }
  out.slope = (n * sul - su * sl) / (n * suu - su * su);
  out.integrable = out.slope < -0.05;
  return out;
}

}  // namespace regint
