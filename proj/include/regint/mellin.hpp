#pragma once

#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "regint/exponents.hpp"
#include "regint/special_fn.hpp"

namespace regint {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

// ---- continuous pair on R_+ ----------------------------------------------------

// f on (0, inf) with sup |f^{(k)}(y) y^{sigma + k}| finite for sigma > c.
struct GrowthCertifiedFn {
  std::function<cplx(double)> f;
  double c = 0.0;
  // Optional exact derivatives (y, k); otherwise Richardson central differences.
  std::function<cplx(double, int)> derivative;
  int smoothness = 2;  // highest derivative order available

  cplx operator()(double y) const { return f(y); }
  cplx diff(double y, int k) const;
};

// Holomorphic for Re s > c; period 2 pi / log q when q > 0.
struct PeriodicMellinFn {
  std::function<cplx(cplx)> M;
  double c = 0.0;
  double q = 0.0;  // 0 for the continuous pair

  cplx operator()(cplx s) const { return M(s); }
  double period() const;  // 2 pi / log q, or infinity
};

// int_0^inf f(y) y^s dy / y. Throws AbscissaViolation unless Re s > c.
cplx mellin_fwd(const GrowthCertifiedFn& f, cplx s);
PeriodicMellinFn mellin_of(const GrowthCertifiedFn& f);

// int_{Re s = sigma} M(s) y^{-s} ds / 2 pi i, and its k-th derivative in y
// (-1)^k int (s)_k M(s) y^{-s-k} ds / 2 pi i.
cplx mellin_inv(const PeriodicMellinFn& M, double y, double sigma);
cplx mellin_inv_derivative(const PeriodicMellinFn& M, double y, double sigma, int k);
GrowthCertifiedFn inverse_of(const PeriodicMellinFn& M, double sigma);

// (-1)^k / (s)_k * int f^{(k)}(y) y^{s + k} dy / y
cplx mellin_by_parts(const GrowthCertifiedFn& f, cplx s, int k);

// B_l^{k, sigma} and H_l^{k, sigma}; l >= 1 or kInfNorm.
double seminorm_B(const GrowthCertifiedFn& f, double l, int k, double sigma);
double seminorm_H(const PeriodicMellinFn& M, double l, int k, double sigma);

// ---- discrete pair on varpi^Z ---------------------------------------------------

// f(varpi^n) = values[n - n0] on the window; beyond the window
// f(varpi^{n_last + m}) = values.back() ratio^m. Zero below n0.
struct DiscreteFn {
  double q = 2.0;
  long long n0 = 0;
  std::vector<cplx> values;
  cplx tail_ratio = 0.0;

  long long n_last() const { return n0 + (long long)values.size() - 1; }
  cplx operator()(long long n) const;
  double growth() const;  // c = log |ratio| / log q, or -inf without a tail
};

cplx mellin_fwd(const DiscreteFn& f, cplx s);
PeriodicMellinFn mellin_of(const DiscreteFn& f);
// int_0^{2 pi / log q} M(sigma + i tau) q^{n (sigma + i tau)} log q dtau / 2 pi
cplx mellin_inv(const PeriodicMellinFn& M, long long n, double sigma);

double seminorm_B(const DiscreteFn& f, double l, double sigma);
// Discrete H norms need M.q > 0 and k = 0.

// ---- F^1 Fourier components -------------------------------------------------------

struct SignComponents {
  cplx plus, minus;
};
SignComponents f1_real(const std::function<cplx(double)>& f, double t);
// int f(t e^{i theta}) e^{i n theta} dtheta / 2 pi
cplx f1_complex(const std::function<cplx(cplx)>& f, int n, double t, int nodes = 256);
// sum_{|n| <= N} f_n(t) e^{-i n theta}
cplx f1_reconstruct(const std::function<cplx(cplx)>& f, double t, double theta, int N, int nodes = 256);

// ---- ergodic averages ----------------------------------------------------------------

// (1/T) int_0^T e(n . (x + t theta)) dt, e(x) = exp(2 pi i x), closed form.
cplx ergodic_average(std::span<const double> theta, std::span<const long long> n, double T,
                     std::span<const double> x = {});
// The same by Gauss-Legendre quadrature, as a cross-check.
cplx ergodic_average_numeric(std::span<const double> theta, std::span<const long long> n, double T,
                             std::span<const double> x = {});
// 2 / (T |n . theta|); infinity when n . theta = 0.
double ergodic_bound(std::span<const double> theta, std::span<const long long> n, double T);

struct ConstancyVerdict {
  bool constant = false;
  cplx value;          // the constant when constant
  // witness as log x, since the oscillation can sit far beyond double range
  double log_x1 = 0.0, log_x2 = 0.0;
  double gap = 0.0;  // |f(x1) - f(x2)| exceeds this when not constant
};
// f(x) = sum a_k x^{i theta_k}. Equal theta are merged first.
ConstancyVerdict detect_constant(std::vector<std::pair<cplx, double>> terms);

// ---- integrability of constant-term tails ------------------------------------------

// All surviving exponents have Re alpha < 1/2 (terms are c t^{1/2 + alpha} log^n t).
bool integrable_exponents(const ExponentSet& e);
// int_1^T f(t) dt / t^2 in closed form.
cplx tail_integral(const ExponentSet& e, double T);

struct TailFit {
  bool integrable = false;
  double slope = 0.0;  // growth rate of window increments in log T
};
// Numeric check: increments of int_1^T a(t) dt / t^2 over unit windows in log T,
// u in [u_start, u_end], fitted by least squares. Integrable iff slope < -0.05.
TailFit tail_fit(const std::function<cplx(double)>& a, double u_start = 40.0, double u_end = 80.0);

}  // namespace regint
