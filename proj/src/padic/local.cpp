#include <cmath>

#include "regint/errors.hpp"
#include "regint/laurent.hpp"
#include "regint/padic.hpp"

namespace regint {
namespace {

cplx qpow(double q, cplx e) { return std::exp(e * std::log(q)); }

void check_q(double q) {
  if (!(q >= 2.0)) throw DomainError("residue field size must be >= 2");
}

}  // namespace

LocalCharData unramified_data(double q, cplx s) {
  check_q(q);
  return {q, s, qpow(q, -s), qpow(q, s)};
}

cplx whittaker_unramified(int n, const LocalCharData& data) {
  if (n < 0) return 0.0;
  // (alpha^{n+1} - beta^{n+1}) / (alpha - beta) without the removable division
  cplx sum = 0.0, a = 1.0;
  const cplx ratio = data.alpha / data.beta;
  for (int k = 0; k <= n; ++k) {
    sum += a;
    a *= ratio;
  }
  return std::pow(data.q, -0.5 * n) * sum * std::pow(data.beta, n);
}

double whittaker_bound(int n, const LocalCharData& data, double eps) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  const double expo = 0.5 - std::abs(data.s.real()) - eps;
  return 2.0 / (eps * std::log(data.q)) / std::exp(1.0) * std::pow(data.q, -n * expo);
}

bool whittaker_bound_check(int n, const LocalCharData& data, double eps) {
  return std::abs(whittaker_unramified(n, data)) <= whittaker_bound(n, data, eps) * (1.0 + 1e-12);
}

IwahoriScalars iwahori_scalars(double q, cplx s) {
  check_q(q);
  const cplx den = 1.0 + qpow(q, -(1.0 + 2.0 * s));
  if (std::abs(den) < 1e-14) throw PoleError("mu1 denominator vanishes");
  const double h = std::sqrt(q) + 1.0 / std::sqrt(q);
  IwahoriScalars out;
  out.mu1 = qpow(q, -2.0 * s) * (1.0 - qpow(q, -(1.0 - 2.0 * s))) / den;
  out.c1 = (qpow(q, s + 0.5) - qpow(q, -(s + 0.5))) / h;
  out.c0 = (qpow(q, s) + qpow(q, -s)) / h;
  return out;
}

cplx iwahori_c0_derivative(double q, cplx s) {
  const auto c0 = [q](cplx z) { return iwahori_scalars(q, z).c0; };
  return laurent_of(c0, s, 0, 3, 0.1, 32)[1];
}

IwahoriVector iwahori_e0() { return {1.0, 1.0}; }

IwahoriVector iwahori_e1(double q) {
  check_q(q);
  // sqrt(1+1/q) (sqrt(q+1) 1_{K_0} - 1_K / sqrt(q+1)) restricted to K
  return {std::sqrt(q), -1.0 / std::sqrt(q)};
}

IwahoriVector translate_a_inv(double q, cplx s, IwahoriVector v) {
  // f(a) = |p^-1|^{s+1/2} f(1); w a = diag(1, p^-1) w
  return {qpow(q, s + 0.5) * v.at_1, qpow(q, -(s + 0.5)) * v.at_w};
}

cplx iwahori_spherical_factor(double q, cplx s) {
  check_q(q);
  const cplx den = 1.0 - qpow(q, -2.0 * s);
  if (std::abs(den) < 1e-14) throw PoleError("spherical factor at q^{2s} = 1");
  return (1.0 - qpow(q, -(1.0 + 2.0 * s))) / den;
}

cplx iwahori_e1_factor(double q, cplx s) {
  check_q(q);
  const cplx den = 1.0 - qpow(q, -2.0 * s);
  if (std::abs(den) < 1e-14) throw PoleError("e1 factor at q^{2s} = 1");
  return (qpow(q, -2.0 * s) - 1.0 / q) / den;
}

Matrix2 intertwine_iwahori(double q, cplx s, int shells) {
  check_q(q);
  if (shells < 1) throw DomainError("need at least one shell");
  // int_{|x| > 1} |x|^{-2s-1} dx over shells |x| = q^j, j >= 1
  cplx outer;
  const cplx r = qpow(q, -2.0 * s);
  if (std::abs(1.0 - r) < 1e-14) throw PoleError("intertwiner at q^{2s} = 1");
  if (s.real() > 0) {
    cplx term = r;
    outer = 0.0;
    for (int j = 1; j <= shells; ++j, term *= r) outer += (1.0 - 1.0 / q) * term;
    outer += (1.0 - 1.0 / q) * term / (1.0 - r);  // exact tail from shell shells+1
  } else {
    outer = (1.0 - 1.0 / q) * r / (1.0 - r);
  }
  const double vol_o = 1.0, vol_p = 1.0 / q, vol_units = 1.0 - 1.0 / q;

  // values at (1, w) of M phi_1 and M phi_w, phi_1 supported on B K_0, phi_w on B w K_0
  //   w n(x) lies in K - K_0 for x in o, and in B (lower-unipotent in K_0) otherwise
  //   w n(x) w lies in K_0 for x in p, K - K_0 for units, else B (K - K_0)
  const IwahoriVector Mphi1{outer, vol_p};
  const IwahoriVector Mphiw{vol_o, vol_units + outer};

  const double sq = std::sqrt(q), h = sq + 1.0 / sq;
  const auto apply = [&](IwahoriVector v) {  // v in the (phi_1, phi_w) basis
    return IwahoriVector{v.at_1 * Mphi1.at_1 + v.at_w * Mphiw.at_1, v.at_1 * Mphi1.at_w + v.at_w * Mphiw.at_w};
  };
  const auto coords = [&](IwahoriVector g) {  // (e0, e1) coordinates of a function given at (1, w)
    return std::array<cplx, 2>{(g.at_1 / sq + g.at_w * sq) / h, (g.at_1 - g.at_w) / h};
  };
  const auto c0 = coords(apply(iwahori_e0()));
  const auto c1 = coords(apply(iwahori_e1(q)));
  return {{{c0[0], c1[0]}, {c0[1], c1[1]}}};
}

}  // namespace regint
