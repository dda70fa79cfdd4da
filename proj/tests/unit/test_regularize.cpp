#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "regint/errors.hpp"
#include "regint/regularize.hpp"

using namespace regint;

namespace {

const double L = lambda_laurent_data().residue;

AutomorphicSample reg_half() { return sample_product({{0.5, 0, true}}); }

double scale(cplx v) { return std::max(1.0, std::abs(v)); }

}  // namespace

TEST_CASE("h_T closed form") {
  const ExponentSet single({{1.0, -1.0, 0}});
  for (cplx s : {cplx(0.3, 0.1), cplx(2.0, 0.0)}) {
    const double T = 7.0;
    CHECK(std::abs(h_T(s, single, T) - std::pow(T, s - 1.0) / (s - 1.0)) < 1e-13);
  }
  // log term against quadrature
  const ExponentSet logt({{1.0, 0.0, 1}});
  const double e = std::exp(1.0);
  for (double s : {0.4, 1.3}) {
    const auto f = [s](double t) { return std::pow(t, s - 1.0) * std::log(t); };
    const double q = boost::math::quadrature::tanh_sinh<double>().integrate(f, 0.0, e);
    CHECK(std::abs(h_T(s, logt, e) - q) < 1e-9);
  }
  // residue at 1/2 of a degenerate term is its coefficient, for any T
  const ExponentSet deg({{2.5, -0.5, 0}});
  for (double T : {3.0, 11.0}) {
    const auto ser = laurent_of([&](cplx s) { return h_T(s, deg, T); }, 0.5, -2, 4, 0.1);
    CHECK(std::abs(residue(ser) - 2.5) < 1e-10);
  }
  CHECK_THROWS_AS(h_T(0.5, deg, 3.0), PoleError);
}

TEST_CASE("fundamental domain quadrature") {
  const auto q = DomainQuadrature::build(12.0, {}, 32, 24);
  CHECK(std::abs(q.volume() - (kPi / 3.0 - 1.0 / 12.0)) < 1e-12);
  for (const auto& z : q.points()) CHECK(in_fundamental_domain(z));
}

TEST_CASE("regularizing kernel") {
  const std::vector<double> grid = {2.0, 4.5, 9.0};
  for (cplx a : regularizing_kernel(sample_constant(1.0), grid)) CHECK(std::abs(a - 1.0) < 1e-15);
  const double s = 0.15;
  const auto e = regularizing_kernel(sample_product({{0.5 + s, 0, false}}), grid);
  const auto r = regularizing_kernel(sample_product({{0.5 + s, 0, true}}), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    CHECK(std::abs(e[i] - (std::pow(t, 1.0 + s) + lambda_F(s) * std::pow(t, -s))) < 1e-6);
    CHECK(std::abs(r[i] - (std::pow(t, 1.0 + s) + lambda_F(s) * (std::pow(t, -s) - 1.0))) < 1e-6);
  }
}

TEST_CASE("truncation") {
  const cplx s(0.2, 0.4);
  const UpperHalfPoint low{0.1, 3.0};
  CHECK(std::abs(truncate_E(low, s, 10.0) - eval_E(low, s)) < 1e-14);
  CHECK(std::abs(truncate_E({0.3, 15.0}, s, 10.0)) < 1e-8);
  CHECK(std::abs(truncate_E({0.3 / 225.0, 1.0 / 15.0}, s, 10.0) - truncate_E({-0.3, 15.0}, s, 10.0)) < 1e-14);
}

TEST_CASE("unfolding of the truncated pairing") {
  // phi = E^reg(0.6) has a = f exactly, so both Mellin pieces are closed forms
  const auto phi = sample_product({{0.6, 0, true}});
  const double T = 12.0, s = 0.9;
  const Regularizer rg(phi);
  const cplx ss[] = {s};
  const cplx lhs = rg.truncated_pairing(ss)[0];
  cplx above = 0.0;
  for (const auto& t : phi.exponents.terms()) {
    const cplx beta = t.alpha - s;
    above += t.c * (-std::exp(beta * std::log(T)) / beta);
  }
  const cplx rhs = h_T(s, phi.exponents, T) - lambda_tilde(s) * above;
  CHECK(std::abs(lhs - rhs) < 1e-4);
}

TEST_CASE("R vanishes when the kernel equals its exponent part") {
  for (cplx s : {cplx(0.3, 0.2), cplx(-0.1, 0.6)}) {
    CHECK(std::abs(R_of(s, sample_constant(1.0))) < 1e-8);
    CHECK(std::abs(R_of(s, sample_product({{0.6, 0, true}}))) < 1e-8);
  }
}

TEST_CASE("functional equation of R* and T-independence") {
  const std::vector<AutomorphicSample> samples = {
      sample_product({{0.0, 1, false}, {0.0, 1, false}}),
      sample_product({{0.5, 0, true}, {0.5, 0, true}}),
      sample_product({{0.7, 0, false}, {cplx(0.1, 0.3), 0, false}}),
  };
  const std::vector<cplx> grid = {{0.3, 0.2}, {0.3, -0.2}, {0.1, 0.7}, {-0.2, 0.35}, {0.05, -1.1}};
  for (const auto& phi : samples) {
    RegularizeOptions a, b;
    a.T = 8.0;
    b.T = 16.0;
    const Regularizer r8(phi, a), r16(phi, b);
    for (cplx s : grid) {
      const cplx p = r8.R_star(s), m = r8.R_star(-s);
      CHECK_MESSAGE(std::abs(p - m) < 1e-5 * scale(p), phi.label);
      const cplx q = r16.R(s), r = r8.R(s);
      CHECK_MESSAGE(std::abs(q - r) < 1e-5 * scale(q), phi.label);
    }
    CHECK(std::abs(r8.integral().total - r16.integral().total) < 1e-5);
  }
}

TEST_CASE("regularized integral anchors") {
  const auto one = regularized_integral(sample_constant(1.0));
  CHECK(std::abs(one.total - kPi / 3.0) < 1e-5);
  CHECK(std::abs(one.degenerate - 1.0) < 1e-15);
  CHECK(std::abs(one.total - (one.principal + one.degenerate) / L) < 1e-15);
  const auto q = DomainQuadrature::build(1e6, {}, 32, 24);
  CHECK(std::abs(q.volume() + 1e-6 - kPi / 3.0) < 1e-6);

  CHECK(std::abs(regularized_integral(reg_half()).total) < 1e-5);
  for (int n : {0, 1})
    for (double s : {0.05, 0.1}) {
      const auto r = regularized_integral(sample_product({{0.5 + s, n, true}}));
      CHECK(std::abs(r.total + lambda_F_deriv(n, s) / L) < 1e-5);
    }
}

TEST_CASE("subtraction oracle") {
  CHECK(std::abs(subtraction_oracle(reg_half())) < 1e-8);
  CHECK(std::abs(subtraction_oracle(sample_product({{0.6, 0, false}, {0.0, 1, false}}))) < 1e-4);
  CHECK(std::abs(regularized_integral(sample_product({{0.6, 0, false}, {0.0, 1, false}})).total) < 1e-4);
  const auto plan = plan_subtraction(sample_product({{0.2, 0, false}, {0.2, 0, false}}).exponents);
  REQUIRE(plan.pieces.size() == 3);  // alpha = 0.9, 0.5, 0.1
  for (const auto& t : plan.residual.terms()) CHECK(t.alpha.real() <= 0.0);
  const auto naive = sample_product({{0.9, 0, false}});
  CHECK_THROWS_AS(plain_integral(naive), IntegrabilityError);
}

TEST_CASE("dual oracle agreement") {
  const std::vector<AutomorphicSample> samples = {
      sample_constant(1.0),
      reg_half(),
      sample_product({{0.6, 0, true}}),
      sample_product({{0.2, 0, false}, {0.2, 0, false}}),
      sample_product({{0.0, 1, false}, {0.0, 1, false}}),
      sample_product({{0.5, 0, true}, {0.5, 0, true}}),
      sample_product({{0.5, 1, true}, {0.3, 0, false}}),
      sample_product({{cplx(0.1, 0.5), 0, false}, {cplx(0.1, -0.5), 0, false}}),
      hecke_T(2, sample_product({{0.5, 1, true}})),
  };
  for (const auto& phi : samples) {
    const cplx a = regularized_integral(phi).total, b = subtraction_oracle(phi);
    CHECK_MESSAGE(std::abs(a - b) < 1e-4, phi.label);
  }
}

TEST_CASE("linearity and integrable consistency") {
  const auto f = sample_product({{0.0, 1, false}, {0.0, 1, false}});
  const auto g = sample_product({{0.5, 0, true}, {0.3, 0, false}});
  const cplx a(2.0, -1.0), b(0.5, 0.0);
  const cplx lhs = regularized_integral(sample_scaled_sum(a, f, b, g)).total;
  const cplx rhs = a * regularized_integral(f).total + b * regularized_integral(g).total;
  CHECK(std::abs(lhs - rhs) < 1e-5);

  const cplx lt = lambda_tilde(0.1);
  const auto psi = sample_combination({{1.0, {{0.1, 0, false}, {0.1, 0, false}}},
                                       {-1.0, {{0.7, 0, false}}},
                                       {-2.0 * lt, {{0.5, 0, true}}}});
  for (const auto& t : psi.exponents.terms()) CHECK(t.alpha.real() < 0.5);
  CHECK(std::abs(regularized_integral(psi).total - plain_integral(psi)) < 1e-4);
}

TEST_CASE("tail fit rejects undeclared growth") {
  auto phi = sample_product({{0.3, 0, false}});
  phi.exponents = ExponentSet({{lambda_tilde(0.3), -0.3, 0}});  // drops the t^{0.8} term
  CHECK_THROWS_AS(regularized_integral(phi), NonRegularizable);
}
