#pragma once

#include <complex>
#include <span>
#include <vector>

namespace regint {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Throws DomainError when either component is NaN or infinite.
void require_finite(cplx z, const char* where);

cplx log_gamma(cplx z);
cplx gamma(cplx z);
cplx zeta(cplx s);

// Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s). Values are memoized by the exact
// bit pattern of s; the cache is safe for concurrent readers.
cplx completed_lambda(cplx s);

// 1/Lambda(s), extended by 0 at the poles s = 0, 1.
cplx inv_completed_lambda(cplx s);

// lambda_F(s) = Lambda(-2s) / Lambda(2 + 2s); simple pole at s = 0.
cplx lambda_F(cplx s);

// Scattering coefficient c(1/2 + s) = Lambda(2s) / Lambda(1 + 2s)
// = lambda_F(s - 1/2). Equals -1 at s = 0.
cplx lambda_tilde(cplx s);

// K_nu(x) for x > 0 from the integral over t of exp(-x cosh t) cosh(nu t).
cplx bessel_k(cplx nu, double x);

// Tabulates K_{nu_j}(n x0) for a fixed list of orders and n = 1..nmax,
// sharing the exponential factors across orders and the cosh factors across
// arguments. Arguments below x_min are rejected.
class BesselKBatch {
 public:
  BesselKBatch(std::span<const cplx> orders, double x_min, double step = 0.1);

  std::size_t order_count() const { return orders_.size(); }

  // out has order_count() * nmax entries; out[j * nmax + n - 1] = K_{nu_j}(n x0).
  void fill(double x0, int nmax, std::span<cplx> out) const;

 private:
  std::vector<cplx> orders_;
  double x_min_;
  double step_;
  std::size_t nodes_;
  std::vector<cplx> cosh_table_;  // nodes_ x orders
};

}  // namespace regint
