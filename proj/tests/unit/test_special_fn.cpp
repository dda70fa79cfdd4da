#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <random>

#include "regint/errors.hpp"
#include "regint/laurent.hpp"
#include "regint/special_fn.hpp"

using namespace regint;

namespace {
double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }
}  // namespace

TEST_CASE("gamma special values") {
  CHECK(rel_err(regint::gamma(1.0), 1.0) < 1e-13);
  CHECK(rel_err(regint::gamma(0.5), std::sqrt(kPi)) < 1e-13);
  CHECK(rel_err(regint::gamma(5.0), 24.0) < 1e-13);
  CHECK_THROWS_AS(regint::gamma(0.0), PoleError);
  CHECK_THROWS_AS(regint::gamma(-3.0), PoleError);
  CHECK_THROWS_AS(regint::gamma(cplx(std::nan(""), 0.0)), DomainError);
}

TEST_CASE("gamma against frozen high-precision values") {
  // mpmath at 30 digits
  CHECK(rel_err(regint::gamma({0.2, 5.0}), {-0.000506851596340832182, 0.000322246244539955542}) < 1e-12);
  CHECK(rel_err(regint::gamma({-3.3, 1.1}), {-0.0135237178158725225, 0.0224099227533636822}) < 1e-12);
  CHECK(rel_err(regint::gamma({25.0, -20.0}), {-363201327909041347859.097, -43588116059528902617.607}) < 1e-12);
  CHECK(rel_err(regint::gamma({-12.5, 0.3}), {-8.95550471695783818e-10, -8.67666600041047908e-10}) < 1e-12);
}

TEST_CASE("gamma agrees with boost on random reals") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 40.0);
  for (int i = 0; i < 50; ++i) {
    double x = u(rng);
    if (std::abs(x - std::round(x)) < 1e-3) x += 0.01;
    CHECK(rel_err(regint::gamma(x), boost::math::tgamma(x)) < 1e-12);
  }
}

TEST_CASE("zeta special values") {
  CHECK(rel_err(zeta(2.0), kPi * kPi / 6.0) < 1e-13);
  CHECK(rel_err(zeta(0.0), -0.5) < 1e-13);
  CHECK(rel_err(zeta(-1.0), -1.0 / 12.0) < 1e-13);
  CHECK(std::abs(zeta(-4.0)) == 0.0);
  CHECK_THROWS_AS(zeta(1.0), PoleError);
}

TEST_CASE("zeta against frozen complex values") {
  CHECK(rel_err(zeta({0.3, 14.1}), {-0.163000860195660165, -0.0616147205178555162}) < 1e-12);
  CHECK(rel_err(zeta({-3.7, 2.2}), {-0.0174711897871231039, 0.0465954930475711708}) < 1e-12);
  CHECK(rel_err(zeta({2.5, -40.0}), {0.915584955506402253, 0.0950585105671246465}) < 1e-12);
  CHECK(rel_err(zeta({0.5, 99.0}), {0.115073815624646948, 0.575861300069389948}) < 1e-12);
  CHECK(rel_err(zeta({-9.5, 0.5}), {-0.00981208142136860067, -0.00355844393301456406}) < 1e-12);
  CHECK(rel_err(zeta({7.2, 3.3}), {0.995210306919871557, -0.00490381914808834246}) < 1e-12);
}

TEST_CASE("zeta agrees with boost on random reals") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    double x = u(rng);
    if (std::abs(x - 1.0) < 1e-2) x += 0.05;
    const double want = boost::math::zeta(x);
    CHECK(std::abs(zeta(x) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("completed lambda") {
  CHECK(rel_err(completed_lambda(2.0), kPi / 6.0) < 1e-13);
  CHECK(rel_err(completed_lambda(3.0), 0.191313298015585171125) < 1e-13);
  CHECK_THROWS_AS(completed_lambda(0.0), PoleError);
  CHECK_THROWS_AS(completed_lambda(1.0), PoleError);
  CHECK(std::abs(inv_completed_lambda(1.0)) == 0.0);
  CHECK(lambda_tilde(0.0) == cplx(-1.0));
}

TEST_CASE("functional equation on a random grid") {
  // compare the reflected evaluation against the direct product formula at 1 - s,
  // which goes through the zeta reflection when Re(1 - s) < 0
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> re(-6.0, 7.0), im(-30.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx direct = std::exp(-0.5 * (1.0 - s) * std::log(kPi)) * regint::gamma(0.5 * (1.0 - s)) * zeta(1.0 - s);
    worst = std::max(worst, rel_err(completed_lambda(s), direct));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("residues of Lambda") {
  const auto at1 = laurent_of([](cplx s) { return completed_lambda(s); }, 1.0, -1, 4, 0.1);
  const auto at0 = laurent_of([](cplx s) { return completed_lambda(s); }, 0.0, -1, 4, 0.1);
  CHECK(std::abs(residue(at1) - 1.0) < 1e-10);
  CHECK(std::abs(residue(at0) + 1.0) < 1e-10);
}

TEST_CASE("bessel K closed form and frozen values") {
  for (double x : {0.05, 0.3, 1.0, 7.5, 30.0, 60.0}) {
    const double want = std::sqrt(kPi / (2 * x)) * std::exp(-x);
    CHECK(rel_err(bessel_k(0.5, x), want) < 1e-12);
  }
  CHECK(rel_err(bessel_k(0.0, 1.0), 0.42102443824070833) < 1e-12);
  CHECK(rel_err(bessel_k({0.0, 3.0}, 0.5), -0.0113625307524798695) < 1e-10);
  CHECK(std::abs(bessel_k({0.0, 3.0}, 0.5).imag()) < 1e-18);
  CHECK(rel_err(bessel_k({0.3, 2.0}, 5.44), {0.00162629905190807040, 0.000168658829130038323}) < 1e-11);
  CHECK(rel_err(bessel_k({4.5, -1.0}, 0.07), {715020.899893545111, 18296252.5501439911}) < 1e-11);
  CHECK(rel_err(bessel_k({0.25, 0.1}, 40.0), {8.39830202259097989e-19, 5.18500978658230514e-22}) < 1e-11);
  CHECK_THROWS_AS(bessel_k(0.0, 0.0), DomainError);
}

TEST_CASE("bessel K agrees with boost for real orders") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nu(-5.0, 5.0), lx(std::log(0.05), std::log(60.0));
  for (int i = 0; i < 60; ++i) {
    const double v = nu(rng), x = std::exp(lx(rng));
    CHECK(rel_err(bessel_k(v, x), boost::math::cyl_bessel_k(v, x)) < 1e-10);
  }
}

TEST_CASE("bessel K asymptotic envelope") {
  for (double x = 20.0; x <= 60.0; x += 2.5)
    for (cplx nu : {cplx(0.0), cplx(2.5, 1.0), cplx(-5.0, 0.0), cplx(0.0, 5.0)})
      CHECK(std::abs(bessel_k(nu, x)) * std::exp(x) * std::sqrt(x) < 3.0);
}

TEST_CASE("batched K table matches pointwise evaluation") {
  const std::vector<cplx> orders = {{0.0, 0.0}, {0.3, 1.7}, {-0.45, 0.2}, {0.5, 0.0}};
  BesselKBatch batch(orders, 5.0);
  std::vector<cplx> out(orders.size() * 12);
  batch.fill(5.4, 12, out);
  for (std::size_t j = 0; j < orders.size(); ++j)
    for (int n = 1; n <= 12; ++n)
      CHECK(rel_err(out[j * 12 + n - 1], bessel_k(orders[j], 5.4 * n)) < 1e-11);
}
