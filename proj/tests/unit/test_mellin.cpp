#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "regint/errors.hpp"
#include "regint/mellin.hpp"

using namespace regint;

namespace {

GrowthCertifiedFn exp_minus(double c = 0.0) { return {[](double y) { return cplx(std::exp(-y)); }, c}; }

PeriodicMellinFn gamma_fn() { return {[](cplx s) { return gamma(s); }, 0.0}; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// sum a_j y^{b_j} e^{-l_j y}, with its Mellin transform in closed form
struct GammaMix {
  std::vector<cplx> a;
  std::vector<int> b;
  std::vector<double> lam;

  GrowthCertifiedFn fn() const {
    const GammaMix m = *this;
    return {[m](double y) {
              cplx s = 0.0;
              for (std::size_t j = 0; j < m.a.size(); ++j) s += m.a[j] * std::pow(y, m.b[j]) * std::exp(-m.lam[j] * y);
              return s;
            },
            0.0};
  }
  PeriodicMellinFn mellin() const {
    const GammaMix m = *this;
    return {[m](cplx s) {
              cplx v = 0.0;
              for (std::size_t j = 0; j < m.a.size(); ++j)
                v += m.a[j] * gamma(s + double(m.b[j])) * std::pow(m.lam[j], -(s + double(m.b[j])));
              return v;
            },
            0.0};
  }
};

GammaMix random_mix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), l(0.5, 2.0);
  std::uniform_int_distribution<int> b(0, 2), terms(1, 3);
  GammaMix m;
  for (int j = terms(rng); j > 0; --j) {
    m.a.emplace_back(u(rng), u(rng));
    m.b.push_back(b(rng));
    m.lam.push_back(l(rng));
  }
  return m;
}

DiscreteFn random_discrete(std::mt19937_64& rng, bool with_tail) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 8), start(-4, 4), qi(0, 3);
  const double qs[] = {2.0, 3.0, 5.0, 9.0};
  DiscreteFn f;
  f.q = qs[qi(rng)];
  f.n0 = start(rng);
  for (int j = len(rng); j > 0; --j) f.values.emplace_back(u(rng), u(rng));
  if (with_tail) f.tail_ratio = cplx(u(rng), u(rng)) * 0.9;
  return f;
}

}  // namespace

TEST_CASE("continuous Mellin transform") {
  const auto e = exp_minus();
  for (cplx s : {cplx(1.0), cplx(0.5, 2.0), cplx(2.3, -1.1), cplx(0.2, 7.0)})
    CHECK(rel(mellin_fwd(e, s), gamma(s)) < 1e-10);
  const GrowthCertifiedFn k{[](double y) { return cplx(std::exp(-y - 1.0 / y)); }, -50.0};
  CHECK(rel(mellin_fwd(k, {0.7, 0.3}), {0.246563984085619984, 0.021362138254177225}) < 1e-10);
  const GrowthCertifiedFn g{[](double y) { return cplx(std::exp(-y * y)); }, 0.0};
  CHECK(rel(mellin_fwd(g, {1.3, 2.0}), {0.192227943952292473, -0.172945760988020225}) < 1e-10);
  const GrowthCertifiedFn m3{[](double y) { return cplx(std::min(1.0, std::pow(y, -3.0))); }, 0.0};
  CHECK(std::abs(mellin_fwd(m3, 1.0) - 1.5) < 1e-10);
  CHECK_THROWS_AS(mellin_fwd(e, -0.1), AbscissaViolation);
}

TEST_CASE("continuous inversion and round trip") {
  const auto G = gamma_fn();
  CHECK(std::abs(mellin_inv(G, 1.0, 1.0) - std::exp(-1.0)) < 1e-10);
  CHECK(std::abs(mellin_inv(G, 3.0, 1.0) - 0.0497870683678639430) < 1e-10);
  CHECK(std::abs(mellin_inv(G, 0.4, 0.6) - mellin_inv(G, 0.4, 2.5)) < 1e-8);
  CHECK_THROWS_AS(mellin_inv(G, 1.0, -0.5), AbscissaViolation);

  const std::vector<GrowthCertifiedFn> fs = {
      exp_minus(),
      {[](double y) { return cplx(std::exp(-y * y)); }, 0.0},
      {[](double y) { return cplx(std::exp(-y - 1.0 / y)); }, -5.0},
      {[](double y) { return cplx(y * y * std::exp(-y), std::exp(-2.0 * y)); }, 0.0},
  };
  for (const auto& f : fs) {
    const auto M = mellin_of(f);
    for (double y : {0.3, 1.0, 2.5}) CHECK(std::abs(mellin_inv(M, y, 1.2) - f(y)) < 1e-6);
  }
}

TEST_CASE("integration by parts") {
  const std::vector<GrowthCertifiedFn> fs = {
      {[](double y) { return cplx(std::exp(-y - 1.0 / y)); }, -5.0},
      {[](double y) { return cplx(y * std::exp(-y * y), std::exp(-y)); }, 0.0},
  };
  for (const auto& f : fs)
    for (cplx s : {cplx(0.8, 0.5), cplx(1.7, -2.0)})
      for (int k : {1, 2}) CHECK(rel(mellin_by_parts(f, s, k), mellin_fwd(f, s)) < 1e-6);
  CHECK_THROWS_AS(exp_minus().diff(1.0, 3), BudgetExceeded);
}

TEST_CASE("continuous seminorms") {
  const auto e = exp_minus();
  CHECK(seminorm_B(e, kInfNorm, 0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(seminorm_B(e, 1.0, 0, 1.5) == doctest::Approx(std::tgamma(1.5)).epsilon(1e-9));
  // sup |f' y^{sigma+1}| = sup y^2 e^{-y} = 4 e^{-2}
  CHECK(seminorm_B(e, kInfNorm, 1, 1.0) == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-7));
  // Mellin-Plancherel: B_2 of f equals H_2 of its transform
  const double s = 0.8;
  CHECK(seminorm_B(e, 2.0, 0, s) == doctest::Approx(std::sqrt(std::tgamma(2 * s) / std::pow(2.0, 2 * s))).epsilon(1e-9));
  CHECK(seminorm_H(gamma_fn(), 2.0, 0, s) == doctest::Approx(seminorm_B(e, 2.0, 0, s)).epsilon(1e-8));
  CHECK(seminorm_H(gamma_fn(), kInfNorm, 0, s) == doctest::Approx(std::tgamma(s)).epsilon(1e-9));
  CHECK_THROWS_AS(seminorm_B(e, 0.5, 0, 1.0), DomainError);

  // constant-free inequalities between the two sides
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> sig(0.3, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mix = random_mix(rng);
    const auto f = mix.fn();
    const auto M = mix.mellin();
    const double sigma = sig(rng);
    const int k = trial % 3;
    CHECK(seminorm_H(M, kInfNorm, k, sigma) <= seminorm_B(f, 1.0, k, sigma) * (1 + 1e-9));
    CHECK(seminorm_B(inverse_of(M, sigma), kInfNorm, k, sigma) <= seminorm_H(M, 1.0, k, sigma) * (1 + 1e-9));
  }
}

TEST_CASE("discrete Mellin pair") {
  const DiscreteFn delta{2.0, 0, {1.0}};
  CHECK(std::abs(mellin_fwd(delta, {0.3, 1.7}) - 1.0) < 1e-15);
  const DiscreteFn geo{3.0, 0, {1.0}, 0.5};
  const cplx s(0.4, 0.9);
  CHECK(rel(mellin_fwd(geo, s), 1.0 / (1.0 - 0.5 * std::pow(3.0, -s))) < 1e-14);
  CHECK(geo.growth() == doctest::Approx(std::log(0.5) / std::log(3.0)));
  CHECK_THROWS_AS(mellin_fwd(DiscreteFn{2.0, 0, {1.0}, 4.0}, 1.5), AbscissaViolation);

  const auto M = mellin_of(geo);
  CHECK(std::abs(M({0.2, 0.3}) - M({0.2, 0.3 + M.period()})) < 1e-12);
  for (long long n : {-2, 0, 1, 5}) {
    CHECK(std::abs(mellin_inv(M, n, 0.1) - geo(n)) < 1e-10);
    CHECK(std::abs(mellin_inv(M, n, 0.1) - mellin_inv(M, n, 1.3)) < 1e-10);
  }

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_discrete(rng, trial % 2 == 1);
    const auto Mf = mellin_of(f);
    const double sigma = std::max(0.0, f.growth()) + 0.3;
    for (long long n = f.n0 - 2; n <= f.n_last() + 3; ++n) CHECK(std::abs(mellin_inv(Mf, n, sigma) - f(n)) < 1e-10);
    const double binf = seminorm_B(f, kInfNorm, sigma), b1 = seminorm_B(f, 1.0, sigma), b2 = seminorm_B(f, 2.0, sigma);
    const double hinf = seminorm_H(Mf, kInfNorm, 0, sigma), h1 = seminorm_H(Mf, 1.0, 0, sigma),
                 h2 = seminorm_H(Mf, 2.0, 0, sigma);
    const double slack = 1 + 1e-12;
    CHECK(binf <= b1 * slack);
    CHECK(binf <= b2 * slack);
    CHECK(h1 <= hinf * slack);
    CHECK(h2 <= hinf * slack);
    CHECK(hinf <= b1 * slack);
    double finf = 0.0;
    for (long long n = f.n0 - 2; n <= f.n_last() + 3; ++n)
      finf = std::max(finf, std::abs(mellin_inv(Mf, n, sigma)) * std::pow(f.q, -double(n) * sigma));
    CHECK(finf <= h1 * slack);
    CHECK(std::abs(h2 - b2) < 1e-10 * b2);  // Parseval on the period circle
  }
}

TEST_CASE("F^1 components") {
  const auto even = [](double x) { return cplx(std::cos(x) + x * x); };
  CHECK(std::abs(f1_real(even, 0.7).minus) == 0.0);
  CHECK(f1_real(even, 0.7).plus == even(0.7));
  const auto odd = [](double x) { return cplx(x * x * x); };
  CHECK(std::abs(f1_real(odd, 1.3).plus) == 0.0);

  const auto z = [](cplx w) { return w; };
  CHECK(std::abs(f1_complex(z, -1, 0.8) - 0.8) < 1e-14);
  for (int n : {-3, -2, 0, 1, 2}) CHECK(std::abs(f1_complex(z, n, 0.8)) < 1e-14);

  const auto smooth = [](cplx w) { return std::exp(std::conj(w) / 2.0) + 1.0 / (3.0 - w); };
  for (double t : {0.5, 1.0})
    for (double th : {0.0, 1.1, 4.0})
      CHECK(std::abs(f1_reconstruct(smooth, t, th, 32) - smooth(std::polar(t, th))) < 1e-6);
}

TEST_CASE("ergodic averages") {
  const double th2[] = {1.0, std::sqrt(2.0)};
  const long long n0[] = {2, 0};
  const double th1[] = {1.0};
  const long long one[] = {1}, zero[] = {0};
  CHECK(ergodic_average(th1, zero, 7.5) == cplx(1.0));
  CHECK(std::abs(ergodic_average(th1, one, 100.0)) <= 2.0 / 100.0);
  CHECK(std::abs(ergodic_average(th1, one, 100.0)) < 1e-14);
  CHECK(ergodic_bound(th1, zero, 3.0) == kInfNorm);

  // decay like 1/T: T |avg| = |e(2T) - 1| / (4 pi) = 1 / (2 pi) at quarter-integer T
  for (double T : {10.25, 20.25, 40.25, 80.25}) CHECK(T * std::abs(ergodic_average(th2, n0, T)) == doctest::Approx(1.0 / (2 * kPi)));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> th(-3.0, 3.0), tt(0.1, 50.0);
  std::uniform_int_distribution<int> ni(-4, 4), dim(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim(rng);
    std::vector<double> theta(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d));
    std::vector<long long> n(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) theta[i] = th(rng), x[i] = th(rng), n[i] = ni(rng);
    const double T = tt(rng);
    const cplx avg = ergodic_average(theta, n, T, x);
    CHECK(std::abs(avg) <= ergodic_bound(theta, n, T));
    CHECK(std::abs(avg - ergodic_average_numeric(theta, n, T, x)) < 1e-10);
  }
}

TEST_CASE("constancy of character sums") {
  const auto c = detect_constant({{5.0, 0.0}});
  CHECK(c.constant);
  CHECK(c.value == cplx(5.0));
  const auto osc = detect_constant({{1.0, 1.0}});
  CHECK_FALSE(osc.constant);
  CHECK(std::abs(std::polar(1.0, osc.log_x2) - std::polar(1.0, osc.log_x1)) > osc.gap);
  CHECK(osc.gap > 0.0);
  CHECK(detect_constant({{1.0, 1.0}, {-1.0, 1.0}}).constant);

  // a constant plus tiny-frequency oscillation still gets a witness
  const std::vector<std::pair<cplx, double>> terms = {{2.0, 0.0}, {{0.3, 0.1}, 1e-3}, {-0.2, std::sqrt(3.0)}};
  const auto w = detect_constant(terms);
  CHECK_FALSE(w.constant);
  auto f = [&](double l) {
    cplx s = 0.0;
    for (const auto& [a, t] : terms) s += a * std::polar(1.0, t * l);
    return s;
  };
  CHECK(std::abs(f(w.log_x1) - f(w.log_x2)) > w.gap);
}

TEST_CASE("tail integrability") {
  const ExponentSet e({{{1.0, 0.2}, {0.1, 3.0}, 1}, {2.0, {-0.7, 0.0}, 0}, {{0.0, 1.0}, {0.5, 0.0}, 2}});
  // closed form against quadrature in u = log t
  auto g = [&](double u) { return e.evaluate(std::exp(u)) * std::exp(-u); };
  const double L = 6.0;
  cplx num = 0.0;
  for (int k = 0; k < 240; ++k) num += boost::math::quadrature::gauss<double, 20>::integrate(g, L * k / 240, L * (k + 1) / 240);
  CHECK(rel(tail_integral(e, std::exp(L)), num) < 1e-10);
  CHECK_FALSE(integrable_exponents(e));

  // a survivor with Re alpha >= 1/2 is always flagged; Re alpha <= 1/4 never is
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> bad(0.5, 1.5), good(-1.0, 0.25), im(-5.0, 5.0), u(-1.0, 1.0);
  std::uniform_int_distribution<int> nn(0, 2), extra(0, 3), coin(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ExponentTerm> bg;
    for (int j = extra(rng); j > 0; --j) bg.push_back({{u(rng), u(rng)}, {good(rng), im(rng)}, nn(rng)});
    const ExponentSet ok(bg);
    std::vector<ExponentTerm> with = bg;
    const double re = coin(rng) == 0 ? 0.5 : bad(rng);  // Re alpha = 1/2 exactly: bounded but no limit
    with.push_back({{u(rng), u(rng)}, {re, coin(rng) == 0 ? 0.0 : im(rng)}, nn(rng)});
    if (coin(rng) == 0) with.push_back({{u(rng), u(rng)}, {0.5, im(rng)}, 0});
    const ExponentSet badset(with);

    CHECK_FALSE(integrable_exponents(badset));
    CHECK_FALSE(tail_fit([&](double t) { return badset.evaluate(t); }).integrable);
    CHECK(integrable_exponents(ok));
    CHECK(tail_fit([&](double t) { return ok.evaluate(t); }).integrable);
  }
}
