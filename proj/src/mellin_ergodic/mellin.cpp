#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "regint/errors.hpp"
#include "regint/mellin.hpp"

namespace regint {
namespace {

using GL = boost::math::quadrature::gauss<double, 20>;
constexpr double kPanel = 0.5;
constexpr double kLineTol = 1e-15;
// a transform computed by quadrature is only good to ~1e-15 absolute, so the
// inverse line stops at a looser relative level
constexpr double kInverseTol = 1e-13;
constexpr double kMaxExtent = 700.0;

// Integral of g over R by panels walking out from center until six in a row
// are negligible against the running total.
template <class F>
auto integrate_line(F&& g, double center, double tol = kLineTol) {
  using R = decltype(g(0.0));
  R acc = GL::integrate(g, center - kPanel, center) + GL::integrate(g, center, center + kPanel);
  for (int dir : {1, -1}) {
    int quiet = 0;
    for (int k = 1; quiet < 6; ++k) {
      const double a = center + dir * k * kPanel, b = a + dir * kPanel;
      if (std::abs(a - center) > kMaxExtent) throw ConvergenceError("integrand does not decay along the line");
      const R p = dir > 0 ? GL::integrate(g, a, b) : GL::integrate(g, b, a);
      acc += p;
      quiet = (k > 4 && std::abs(p) <= tol * std::max(std::abs(acc), 1e-300)) ? quiet + 1 : 0;
    }
  }
  return acc;
}

// sup of h >= 0 over R: scan until h stays below 1e-3 of the best value for
// three units, then golden-section refinement at the best node. Assumes h has
// no second bump beyond that quiet stretch.
template <class F>
double sup_line(F&& h, double center) {
  const double step = kPanel / 8;
  double best_x = center, best = h(center);
  for (int dir : {1, -1}) {
    int quiet = 0;
    for (int i = 1; quiet < 48; ++i) {
      const double x = center + dir * i * step;
      if (std::abs(x - center) > kMaxExtent) throw ConvergenceError("sup scan does not terminate");
      const double v = h(x);
      if (v > best) best = v, best_x = x;
      quiet = (i > 32 && v <= 1e-3 * best) ? quiet + 1 : 0;
    }
  }
  double a = best_x - step, b = best_x + step;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a), hc = h(c), hd = h(d);
  for (int it = 0; it < 40; ++it) {
    if (hc > hd) {
      b = d, d = c, hd = hc;
      c = b - gr * (b - a), hc = h(c);
    } else {
      a = c, c = d, hc = hd;
      d = a + gr * (b - a), hd = h(d);
    }
  }
  return std::max({best, hc, hd});
}

cplx pochhammer(cplx s, int k) {
  cplx p = 1.0;
  for (int j = 0; j < k; ++j) p *= s + double(j);
  return p;
}

void check_l(double l) {
  if (!(l >= 1.0)) throw DomainError("seminorm exponent l must be >= 1");
}

void check_abscissa(double re, double c) {
  if (!(re > c)) throw AbscissaViolation("need Re s = " + std::to_string(re) + " > c = " + std::to_string(c));
}

// mean over one period of g(tau), trapezoid doubled until stable
template <class F>
auto period_mean(F&& g, double period) {
  using R = decltype(g(0.0));
  double scale = 0.0;  // mean |g|, the size rounding is measured against
  auto mean = [&](int n) {
    R acc{};
    double a = 0.0;
    for (int j = 0; j < n; ++j) {
      const R v = g(period * j / n);
      acc += v;
      a += std::abs(v);
    }
    scale = a / n;
    return acc / double(n);
  };
  R prev = mean(64);
  for (int n = 128; n <= 1 << 16; n *= 2) {
    const R cur = mean(n);
    if (std::abs(cur - prev) <= 1e-14 * std::max(scale, 1e-300)) return cur;
    prev = cur;
  }
  throw ConvergenceError("period average did not stabilize");
}

}  // namespace

cplx GrowthCertifiedFn::diff(double y, int k) const {
  if (k < 0) throw DomainError("negative derivative order");
  if (k == 0) return f(y);
  if (k > smoothness) throw BudgetExceeded("derivative order beyond the smoothness budget");
  if (derivative) return derivative(y, k);
  if (k > 2) throw BudgetExceeded("numeric derivatives are budgeted to order 2");
  auto D = [&](double h) {
    return k == 1 ? (f(y + h) - f(y - h)) / (2.0 * h) : (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
  };
  // two Richardson levels on central differences: error O(h^6)
  const double h = 0.04 * y;
  const cplx d1 = D(h), d2 = D(h / 2), d3 = D(h / 4);
  const cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

double PeriodicMellinFn::period() const { return q > 0 ? 2.0 * kPi / std::log(q) : kInfNorm; }

cplx mellin_fwd(const GrowthCertifiedFn& f, cplx s) {
  check_abscissa(s.real(), f.c);
  return integrate_line([&](double u) { return f(std::exp(u)) * std::exp(s * u); }, 0.0);
}

PeriodicMellinFn mellin_of(const GrowthCertifiedFn& f) {
  return {[f](cplx s) { return mellin_fwd(f, s); }, f.c, 0.0};
}

cplx mellin_inv_derivative(const PeriodicMellinFn& M, double y, double sigma, int k) {
  if (!(y > 0)) throw DomainError("mellin_inv needs y > 0");
  if (k < 0) throw DomainError("negative derivative order");
  if (M.q > 0) throw DomainError("use the integer-indexed inverse for a periodic M");
  check_abscissa(sigma, M.c);
  const double ly = std::log(y);
  const cplx v = integrate_line(
      [&](double tau) {
        const cplx s(sigma, tau);
        return pochhammer(s, k) * M(s) * std::exp(-(s + double(k)) * ly);
      },
      0.0, kInverseTol);
  return (k % 2 ? -1.0 : 1.0) * v / (2.0 * kPi);
}

cplx mellin_inv(const PeriodicMellinFn& M, double y, double sigma) { return mellin_inv_derivative(M, y, sigma, 0); }

GrowthCertifiedFn inverse_of(const PeriodicMellinFn& M, double sigma) {
  GrowthCertifiedFn g;
  g.f = [M, sigma](double y) { return mellin_inv(M, y, sigma); };
  g.derivative = [M, sigma](double y, int k) { return mellin_inv_derivative(M, y, sigma, k); };
  g.c = M.c;
  g.smoothness = 8;
  return g;
}

cplx mellin_by_parts(const GrowthCertifiedFn& f, cplx s, int k) {
  check_abscissa(s.real(), f.c);
  const cplx I = integrate_line([&](double u) { return f.diff(std::exp(u), k) * std::exp((s + double(k)) * u); }, 0.0);
  return (k % 2 ? -1.0 : 1.0) * I / pochhammer(s, k);
}

double seminorm_B(const GrowthCertifiedFn& f, double l, int k, double sigma) {
  check_l(l);
  check_abscissa(sigma, f.c);
  auto h = [&](double u) { return std::abs(f.diff(std::exp(u), k)) * std::exp((sigma + k) * u); };
  if (l == kInfNorm) return sup_line(h, 0.0);
  return std::pow(integrate_line([&](double u) { return std::pow(h(u), l); }, 0.0), 1.0 / l);
}

double seminorm_H(const PeriodicMellinFn& M, double l, int k, double sigma) {
  check_l(l);
  check_abscissa(sigma, M.c);
  if (M.q > 0) {
    if (k != 0) throw DomainError("the discrete H norms carry no derivative weight");
    const double P = M.period();
    auto h = [&](double tau) { return std::abs(M(cplx(sigma, tau))); };
    if (l == kInfNorm) {
      double best = 0.0, bx = 0.0;
      const int n = 2048;
      for (int j = 0; j < n; ++j)
        if (const double v = h(P * j / n); v > best) best = v, bx = P * j / n;
      // refine on the bracket around the best node
      double a = bx - P / n, b = bx + P / n;
      for (int it = 0; it < 60; ++it) {
        const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (h(m1) > h(m2))
          b = m2;
        else
          a = m1;
      }
      return std::max(best, h(0.5 * (a + b)));
    }
    return std::pow(period_mean([&](double tau) { return std::pow(h(tau), l); }, P), 1.0 / l);
  }
  auto h = [&](double tau) {
    const cplx s(sigma, tau);
    return std::abs(pochhammer(s, k) * M(s));
  };
  if (l == kInfNorm) return sup_line(h, 0.0);
  return std::pow(integrate_line([&](double tau) { return std::pow(h(tau), l); }, 0.0) / (2.0 * kPi), 1.0 / l);
}

// ---- discrete ----------------------------------------------------------------------

cplx DiscreteFn::operator()(long long n) const {
  if (values.empty() || n < n0) return 0.0;
  if (n <= n_last()) return values[std::size_t(n - n0)];
  if (tail_ratio == 0.0) return 0.0;
  return values.back() * std::pow(tail_ratio, double(n - n_last()));
}

double DiscreteFn::growth() const {
  if (tail_ratio == 0.0 || values.empty() || values.back() == 0.0) return -kInfNorm;
  return std::log(std::abs(tail_ratio)) / std::log(q);
}

cplx mellin_fwd(const DiscreteFn& f, cplx s) {
  if (!(f.q > 1)) throw DomainError("q must exceed 1");
  check_abscissa(s.real(), f.growth());
  const double lq = std::log(f.q);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) acc += f.values[j] * std::exp(-double(f.n0 + (long long)j) * s * lq);
  if (f.growth() > -kInfNorm) {
    const cplx x = f.tail_ratio * std::exp(-s * lq);
    acc += f.values.back() * std::exp(-double(f.n_last()) * s * lq) * x / (1.0 - x);
  }
  return acc;
}

PeriodicMellinFn mellin_of(const DiscreteFn& f) {
  return {[f](cplx s) { return mellin_fwd(f, s); }, f.growth(), f.q};
}

cplx mellin_inv(const PeriodicMellinFn& M, long long n, double sigma) {
  if (!(M.q > 1)) throw DomainError("discrete inverse needs q > 1");
  check_abscissa(sigma, M.c);
  const double lq = std::log(M.q);
  return period_mean(
      [&](double tau) {
        const cplx s(sigma, tau);
        return M(s) * std::exp(double(n) * s * lq);
      },
      M.period());
}

double seminorm_B(const DiscreteFn& f, double l, double sigma) {
  check_l(l);
  check_abscissa(sigma, f.growth());
  const double lq = std::log(f.q);
  auto w = [&](long long n) { return std::abs(f(n)) * std::exp(-double(n) * sigma * lq); };
  double acc = 0.0;
  for (long long n = f.n0; n <= f.n_last(); ++n) acc = l == kInfNorm ? std::max(acc, w(n)) : acc + std::pow(w(n), l);
  if (l == kInfNorm) return acc;  // the tail decreases once sigma > c
  if (f.growth() > -kInfNorm) {
    const double r = std::pow(std::abs(f.tail_ratio) * std::exp(-sigma * lq), l);
    acc += std::pow(w(f.n_last()), l) * r / (1.0 - r);
  }
  return std::pow(acc, 1.0 / l);
}

// ---- F^1 components --------------------------------------------------------------------

SignComponents f1_real(const std::function<cplx(double)>& f, double t) {
  const cplx a = f(t), b = f(-t);
  return {0.5 * (a + b), 0.5 * (a - b)};
}

cplx f1_complex(const std::function<cplx(cplx)>& f, int n, double t, int nodes) {
  if (nodes < 1) throw DomainError("need at least one node");
  cplx acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double th = 2.0 * kPi * j / nodes;
    acc += f(std::polar(t, th)) * std::polar(1.0, n * th);
  }
  return acc / double(nodes);
}

cplx f1_reconstruct(const std::function<cplx(cplx)>& f, double t, double theta, int N, int nodes) {
  std::vector<cplx> samples(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) samples[std::size_t(j)] = f(std::polar(t, 2.0 * kPi * j / nodes));
  cplx out = 0.0;
  for (int n = -N; n <= N; ++n) {
    cplx fn = 0.0;
    for (int j = 0; j < nodes; ++j) fn += samples[std::size_t(j)] * std::polar(1.0, 2.0 * kPi * n * j / nodes);
    out += fn / double(nodes) * std::polar(1.0, -n * theta);
  }
  return out;
}

}  // namespace regint
