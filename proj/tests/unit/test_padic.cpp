#include <doctest.h>

#include <cmath>
#include <limits>

#include "regint/errors.hpp"
#include "regint/padic.hpp"

using namespace regint;

namespace {

PadicSchwartz ball(int p, int d, Rational c, int level, Rational coeff = 1) {
  return PadicSchwartz::from_balls(p, d, {{std::vector<Rational>(std::size_t(d), c), level, coeff}});
}

RandomSchwartzOptions options_for(int p, int d) {
  RandomSchwartzOptions o;
  o.max_level = p == 2 ? (d == 1 ? 3 : 2) : (p == 3 ? 2 : 1);
  return o;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("indices of basic balls") {
  for (int p : {2, 3, 5}) {
    CHECK(ball(p, 1, 0, 0).indices() == PadicIndices{0, 0, 0});
    CHECK(ball(p, 1, 0, -1).indices() == PadicIndices{-1, -1, 0});
    CHECK(ball(p, 2, 0, 1).indices() == PadicIndices{1, 1, 0});
  }
  for (int p : {3, 5}) CHECK(ball(p, 1, 1, 1).indices() == PadicIndices{0, 1, 1});
  // 1 + 2 Z_2 is the full unit group
  CHECK(ball(2, 1, 1, 1).indices() == PadicIndices{0, 1, 0});
  CHECK(ball(2, 1, 1, 2).indices() == PadicIndices{0, 2, 2});
  CHECK_THROWS_AS(ball(3, 1, 0, 0, 0).indices(), ZeroFunction);
}

TEST_CASE("parsing and evaluation") {
  const auto f = PadicSchwartz::parse("# two balls\n3 1 2 0 0 0\n3 1 -1/2 0 1/3 -1\n");
  const Rational zero[] = {0}, third[] = {Rational(1, 3)}, one[] = {1};
  CHECK(std::abs(f(zero) - 1.5) < 1e-15);
  CHECK(std::abs(f(one) - 1.5) < 1e-15);
  CHECK(std::abs(f(third) + 0.5) < 1e-15);
  const Rational ninth[] = {Rational(1, 9)};
  CHECK(std::abs(f(ninth)) < 1e-15);
  CHECK_THROWS_AS(PadicSchwartz::parse("3 1 1 0.5 0 0"), DomainError);
  CHECK_THROWS_AS(PadicSchwartz::parse("3 1 1 0 0 0\n5 1 1 0 0 0"), DomainError);
  CHECK_THROWS_AS(PadicSchwartz::parse("4 1 1 0 0 0"), DomainError);
}

TEST_CASE("Fourier transform of a ball") {
  for (int p : {2, 3, 5})
    for (int c : {0, 1, -1}) {
      // 1_{a + p^k Z_p} -> p^{-k} psi(-a x) 1_{p^{-k-c} Z_p}
      const auto f = ball(p, 1, Rational(1, p), 1).fourier(c);
      const auto pw = [p](int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); };
      const Rational far[] = {pw(-2 - c)};
      for (const std::vector<Rational> x : {std::vector{pw(-1 - c)}, std::vector{pw(-c) * 2}}) {
        const double arg = -2.0 * kPi * std::pow(double(p), c - 1) * x[0].convert_to<double>();
        CHECK(std::abs(f(x) - std::polar(1.0 / p, arg)) < 1e-12);
      }
      CHECK(std::abs(f(far)) < 1e-14);
      CHECK(f.indices().D == -1 - c);
    }
}

TEST_CASE("double transform and Plancherel") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5})
    for (int d : {1, 2})
      for (int trial = 0; trial < 20; ++trial) {
        const auto phi = random_schwartz(p, d, rng, options_for(p, d));
        const auto F = phi.fourier();
        CHECK(exactly_equal(F.fourier(), phi.reflect()));
        CHECK(std::abs(F.norm(2) - phi.norm(2)) < 1e-12 * phi.norm(2));
        // conductor 1: FF = q^{c d} Phi(-x)
        const auto G = phi.fourier(1);
        CHECK(exactly_equal(G.fourier(1), phi.reflect().scaled(Rational(ipow(p, d)))));
        CHECK(!exactly_equal(F, phi.scaled(2)));
      }
}

TEST_CASE("index relations on random functions") {
  std::mt19937_64 rng(20240611);
  for (int p : {2, 3, 5})
    for (int d : {1, 2}) {
      const auto opts = options_for(p, d);
      for (int trial = 0; trial < 100; ++trial) {
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(trial);
        const auto phi = random_schwartz(p, d, rng, opts);
        const auto I = phi.indices();
        CHECK(I.D <= I.delta);
        CHECK(I.m <= I.delta - I.D);

        const auto kappa = random_gl(p, d, 4, rng);
        CHECK(phi.translate(kappa).indices() == I);

        for (int c : {0, 1}) {
          const auto J = phi.fourier(c).indices();
          CHECK(I.D + J.delta == -c);
          CHECK(I.delta + J.D == -c);
          if (d == 2)
            for (int coord : {0, 1}) {
              const int cs[] = {coord};
              const auto K = phi.partial_fourier(cs, c).indices();
              CHECK(K.delta <= std::max(I.delta, -c - I.D));
              CHECK(K.D >= std::min(I.D, -c - I.delta));
            }
        }
      }
    }
}

TEST_CASE("norm comparisons on random functions") {
  std::mt19937_64 rng(99);
  for (int p : {2, 3, 5})
    for (int d : {1, 2})
      for (int trial = 0; trial < 100; ++trial) {
        const auto phi = random_schwartz(p, d, rng, options_for(p, d));
        const auto I = phi.indices();
        const double q = p, sup = phi.norm(kInf);
        for (double l : {1.0, 2.0, 3.5}) {
          const double nl = phi.norm(l), slack = 1.0 + 1e-12;
          CHECK(sup <= std::pow(q, d * I.delta / l) * nl * slack);
          CHECK(nl <= std::pow(q, -d * I.D / l) * sup * slack);
          std::vector<double> sigma(std::size_t(d), 0.0);
          sigma[0] = 1.0;
          if (d == 2) sigma[1] = 0.5;
          const double total = d == 2 ? 1.5 : 1.0;
          CHECK(phi.seminorm(l, sigma) <= std::pow(q, -total * I.D) * nl * slack);
        }
      }
}

TEST_CASE("seminorm tail is exact") {
  // int_{Z_p} |x| dx = (1 - 1/p) / (1 - p^{-2}) = p / (p + 1)
  for (int p : {2, 3, 5}) {
    const double s1[] = {1.0};
    CHECK(std::abs(ball(p, 1, 0, 0).seminorm(1.0, s1) - double(p) / (p + 1)) < 1e-14);
    CHECK(std::abs(ball(p, 1, 0, 2).seminorm(kInf, s1) - std::pow(p, -2.0)) < 1e-15);
  }
  const double bad[] = {-1.0};
  CHECK_THROWS_AS(ball(3, 1, 0, 0).seminorm(2.0, bad), DomainError);
}

TEST_CASE("unramified Whittaker values") {
  for (double q : {2.0, 3.0, 5.0, 7.0})
    for (cplx s : {cplx(0.1, 2.0), cplx(-0.2, 0.5), cplx(0.0), cplx(0.3)}) {
      const auto data = unramified_data(q, s);
      CHECK(std::abs(whittaker_unramified(0, data) - 1.0) < 1e-14);
      CHECK(whittaker_unramified(-1, data) == cplx(0.0));
      for (int n = 1; n <= 12; ++n) {
        const cplx a = data.alpha, b = data.beta;
        if (std::abs(a - b) > 1e-3) {
          const cplx closed = std::pow(q, -0.5 * n) * (std::pow(a, n + 1) - std::pow(b, n + 1)) / (a - b);
          CHECK(std::abs(whittaker_unramified(n, data) - closed) < 1e-12 * std::max(1.0, std::abs(closed)));
        }
        for (double eps : {0.05, 0.1, 0.2}) CHECK(whittaker_bound_check(n, data, eps));
      }
    }
  // s = 0: alpha = beta and W(n) = (n+1) q^{-n/2}
  const auto d0 = unramified_data(3.0, 0.0);
  CHECK(std::abs(whittaker_unramified(4, d0) - 5.0 / 9.0) < 1e-14);
}

TEST_CASE("Iwahori translation decomposes into e0 and e1") {
  for (double q : {2.0, 3.0, 5.0})
    for (cplx s : {cplx(0.3), cplx(-0.7, 1.2), cplx(0.0, 0.4)}) {
      const auto sc = iwahori_scalars(q, s);
      const auto lhs = translate_a_inv(q, s, iwahori_e0());
      const auto e1 = iwahori_e1(q);
      CHECK(std::abs(lhs.at_1 - (sc.c1 * e1.at_1 + sc.c0)) < 1e-13);
      CHECK(std::abs(lhs.at_w - (sc.c1 * e1.at_w + sc.c0)) < 1e-13);
    }
  // e1 is a unit vector orthogonal to e0 for vol(K_0) = 1/(q+1)
  const double q = 3.0;
  const auto e1 = iwahori_e1(q);
  const double w0 = 1.0 / (q + 1), w1 = q / (q + 1);
  CHECK(std::abs(e1.at_1.real() * w0 + e1.at_w.real() * w1) < 1e-15);
  CHECK(std::abs(std::norm(e1.at_1) * w0 + std::norm(e1.at_w) * w1 - 1.0) < 1e-14);
}

TEST_CASE("normalization loss scalar") {
  const double L = 3.0 / kPi;
  CHECK(std::abs(L * iwahori_c0_derivative(2.0, -0.5) + std::log(2.0) / kPi) < 1e-9);
  for (double q : {3.0, 5.0})
    CHECK(std::abs(iwahori_c0_derivative(q, -0.5) - std::log(q) * (1 - q) / (1 + q)) < 1e-10);
  CHECK_THROWS_AS(iwahori_scalars(2.0, cplx(-0.5, kPi / (2.0 * std::log(2.0)))), PoleError);
}

TEST_CASE("local intertwining operator on Iwahori vectors") {
  for (double q : {2.0, 3.0, 5.0})
    for (cplx s : {cplx(0.25), cplx(0.6, 0.3), cplx(1.5, -2.0)}) {
      const auto M = intertwine_iwahori(q, s);
      // spherical column: shell sum of 1 + (1-1/q) sum_j q^{-2sj}
      cplx shells = 1.0;
      for (int j = 1; j < 400; ++j) shells += (1.0 - 1.0 / q) * std::exp(-2.0 * s * std::log(q) * double(j));
      CHECK(std::abs(M[0][0] - shells) < 1e-12);
      CHECK(std::abs(M[0][0] - iwahori_spherical_factor(q, s)) < 1e-12);
      CHECK(std::abs(M[1][0]) < 1e-13);
      // e1 is an eigenvector, not sent to e0
      CHECK(std::abs(M[0][1]) < 1e-13);
      CHECK(std::abs(M[1][1] - iwahori_e1_factor(q, s)) < 1e-12);
      const cplx ratio = M[1][1] / M[0][0];
      const cplx mu1 = iwahori_scalars(q, s).mu1;
      const cplx minus = std::exp(-2.0 * s * std::log(q)) * (1.0 - std::exp(-(1.0 - 2.0 * s) * std::log(q))) /
                         (1.0 - std::exp(-(1.0 + 2.0 * s) * std::log(q)));
      CHECK(std::abs(ratio - minus) < 1e-12);
      // they differ by (1 + x) / (1 - x), x = q^{-(1+2s)}
      const double x = std::abs(std::exp(-(1.0 + 2.0 * s) * std::log(q)));
      CHECK(std::abs(ratio / mu1 - 1.0) > x);
    }
  // continued by the same closed form
  const auto M = intertwine_iwahori(3.0, cplx(-0.3, 0.2));
  CHECK(std::abs(M[0][0] - iwahori_spherical_factor(3.0, cplx(-0.3, 0.2))) < 1e-13);
  CHECK_THROWS_AS(intertwine_iwahori(3.0, 0.0), PoleError);
}
