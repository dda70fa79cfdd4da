#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "regint/cli.hpp"
#include "regint/errors.hpp"
#include "regint/lattice.hpp"
#include "regint/mellin.hpp"
#include "regint/padic.hpp"
#include "regint/pairings.hpp"

namespace regint::cli {
namespace {

std::mt19937_64 make_rng(std::uint64_t seed, int id) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(id)};
  return std::mt19937_64(seq);
}

ordered_json cjson(cplx z) { return ordered_json::array({number(z.real()), number(z.imag())}); }
ordered_json zjson(UpperHalfPoint z) { return ordered_json::array({number(z.x), number(z.y)}); }

double scale(cplx v) { return std::max(1.0, std::abs(v)); }

// Largest error seen over a batch, with the parameters that produced it.
struct Worst {
  double err = 0.0;
  ordered_json at = ordered_json::object();
  long long count = 0;
  void see(double e, const ordered_json& params) {
    ++count;
    if (std::isnan(err)) return;  // a NaN stays the verdict
    if (count == 1 || std::isnan(e) || e > err) {
      err = e;
      at = params;
    }
  }
  ordered_json params() const {
    ordered_json p = {{"count", count}, {"worst_at", at}};
    return p;
  }
};

// Failure counter for exact checks, keeping the first failing instance.
struct Tally {
  long long total = 0, failures = 0;
  ordered_json first = nullptr;
  void check(bool ok, const ordered_json& params) {
    ++total;
    if (!ok && failures++ == 0) first = params;
  }
  ordered_json params() const { return first.is_null() ? ordered_json::object() : ordered_json{{"first_failure", first}}; }
};

std::vector<UpperHalfPoint> random_reduced(std::mt19937_64& rng, int count, double y_max) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(kSqrt3Over2, y_max);
  std::vector<UpperHalfPoint> out;
  while (int(out.size()) < count) {
    const UpperHalfPoint z{ux(rng), uy(rng)};
    if (in_fundamental_domain(z, 0.0)) out.push_back(z);
  }
  return out;
}

SL2Z random_gamma(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-3, 3);
  const SL2Z S{0, -1, 1, 0};
  SL2Z g;
  for (int i = 0; i < 4; ++i) g = SL2Z{1, pick(rng), 0, 1} * S * g;
  return g;
}

// ---- 1: lambda machinery ------------------------------------------------------

void lambda_machinery(Recorder& rec, std::uint64_t seed) {
  const double L = lambda_laurent_data().residue;
  rec.close("lambda_F^(-1)(0)", {{"closed_form", "3/pi"}}, 3.0 / kPi, L, 1e-9);

  const double y_top = 1e6;
  const double vol = DomainQuadrature::build(y_top, {}, 32, 24).volume() + 1.0 / y_top;
  rec.close("volume(D)", {{"y_top", y_top}}, kPi / 3.0, vol, 1e-6);
  rec.close("1/lambda_F^(-1)(0) vs volume(D)", {}, vol, 1.0 / L, 1e-6);

  auto rng = make_rng(seed, 1);
  std::uniform_real_distribution<double> re(-6.0, 7.0), im(-30.0, 30.0);
  const auto direct = [](cplx s) { return std::exp(-0.5 * s * std::log(kPi)) * gamma(0.5 * s) * zeta(s); };
  Worst w;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx a = direct(s), b = direct(1.0 - s);
    w.see(std::abs(a - b) / std::abs(a), {{"s", cjson(s)}});
  }
  rec.at_most("Lambda(s) = Lambda(1-s), relative", w.params(), w.err, 1e-12);
}

// ---- 2: Eisenstein series --------------------------------------------------------

void eisenstein(Recorder& rec, std::uint64_t seed) {
  auto rng = make_rng(seed, 2);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(kSqrt3Over2, 1.2), sr(-0.4, 0.4), si(-2.0, 2.0);

  // Fourier expansion at z against the reduced evaluation at gamma z; for
  // |z| < 1 the reduction lands on -1/z, a different point.
  Worst inv;
  for (int i = 0; i < 20; ++i) {
    const UpperHalfPoint z{ux(rng), uy(rng)};
    const SL2Z g = random_gamma(rng);
    const cplx s(sr(rng), si(rng));
    const EisensteinKernel k({s}, {{1.0}}, {0.0});
    cplx at_z, at_gz;
    const double x = z.x;
    k.evaluate_row(z.y, std::span(&x, 1), std::span(&at_z, 1), false);
    const UpperHalfPoint gz = g.act(z);
    k.evaluate(std::span(&gz, 1), std::span(&at_gz, 1));
    inv.see(std::abs(at_z - at_gz) / scale(at_z),
            {{"z", zjson(z)}, {"gamma", {g.a, g.b, g.c, g.d}}, {"s", cjson(s)}});
  }
  rec.at_most("E(gamma z, s) = E(z, s)", inv.params(), inv.err, 1e-7);

  Worst fe;
  std::uniform_real_distribution<double> fr(0.05, 0.45), sign(-1.0, 1.0);
  for (const auto& z : random_reduced(rng, 20, 3.0)) {
    const cplx s(sign(rng) < 0 ? -fr(rng) : fr(rng), si(rng));
    const cplx lhs = completed_lambda(1.0 + 2.0 * s) * eval_E(z, s);
    const cplx rhs = completed_lambda(1.0 - 2.0 * s) * eval_E(z, -s);
    fe.see(std::abs(lhs - rhs) / scale(lhs), {{"z", zjson(z)}, {"s", cjson(s)}});
  }
  rec.at_most("Lambda(1+2s) E(s) = Lambda(1-2s) E(-s)", fe.params(), fe.err, 1e-7);

  Worst centre;
  for (const auto& z : random_reduced(rng, 20, 3.0)) centre.see(std::abs(eval_E(z, 0.0)), {{"z", zjson(z)}});
  rec.at_most("sup |E(z, 0)|", centre.params(), centre.err, 1e-8);
}

// ---- 3: regularization engine ------------------------------------------------------

void regularization(Recorder& rec, std::uint64_t) {
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
    Worst sym, tind;
    for (cplx s : grid) {
      const cplx p = r8.R_star(s), m = r8.R_star(-s);
      sym.see(std::abs(p - m) / scale(p), {{"s", cjson(s)}});
      const cplx q = r16.R(s), r = r8.R(s);
      tind.see(std::abs(q - r) / scale(q), {{"s", cjson(s)}, {"T", {8, 16}}});
    }
    rec.at_most("R*(s) = R*(-s) [" + phi.label + "]", sym.params(), sym.err, 1e-5);
    rec.at_most("R(s) T-independence [" + phi.label + "]", tind.params(), tind.err, 1e-5);
    rec.at_most("integral T-independence [" + phi.label + "]", {{"T", {8, 16}}},
                std::abs(r8.integral().total - r16.integral().total), 1e-5);
  }

  const auto one = regularized_integral(sample_constant(1.0));
  rec.close("int^reg 1", {}, kPi / 3.0, one.total.real(), 1e-5);

  const std::vector<AutomorphicSample> oracle_samples = {
      sample_constant(1.0),
      sample_product({{0.5, 0, true}}),
      sample_product({{0.6, 0, true}}),
      sample_product({{0.2, 0, false}, {0.2, 0, false}}),
      sample_product({{0.0, 1, false}, {0.0, 1, false}}),
      sample_product({{0.5, 0, true}, {0.5, 0, true}}),
      sample_product({{0.5, 1, true}, {0.3, 0, false}}),
      sample_product({{cplx(0.1, 0.5), 0, false}, {cplx(0.1, -0.5), 0, false}}),
      hecke_T(2, sample_product({{0.5, 1, true}})),
  };
  for (const auto& phi : oracle_samples) {
    const cplx a = regularized_integral(phi).total, b = subtraction_oracle(phi);
    rec.at_most("residue vs subtraction oracle [" + phi.label + "]",
                {{"residue", cjson(a)}, {"subtraction", cjson(b)}}, std::abs(a - b), 1e-4);
  }
}

// ---- 4: singular identities -------------------------------------------------------------

void singular_identities(Recorder& rec, std::uint64_t) {
  const double L = lambda_laurent_data().residue;
  const cplx half = regularized_integral(sample_product({{0.5, 0, true}})).total;
  rec.close("int^reg E^reg(1/2)", {{"im", number(half.imag())}}, 0.0, half.real(), 1e-5);
  for (int n : {0, 1})
    for (double s : {0.05, 0.1}) {
      const cplx got = regularized_integral(sample_product({{0.5 + s, n, true}})).total;
      const cplx want = -lambda_F_deriv(n, s) / L;
      rec.at_most("int^reg E^reg,(n)(1/2+s) = -lambda_F^(n)(s)/lambda_F^(-1)(0)",
                  {{"n", n}, {"s", s}, {"expected", cjson(want)}, {"actual", cjson(got)}}, std::abs(got - want), 1e-5);
    }
}

// ---- 5: pairing theorems ---------------------------------------------------------------------

void pairing_theorems(Recorder& rec, std::uint64_t) {
  const auto f = rip_unitary(1, 1);
  const cplx num = regularized_integral(sample_product({{0.0, 1, false}, {0.0, 1, false}})).total;
  rec.close("rip_unitary(1,1) vs int^reg E^(1)(0)^2", {{"formula", f.label}, {"numeric_im", number(num.imag())}},
            f.value(), num.real(), 1e-3);

  for (auto [n1, n2] : {std::pair{0, 0}, std::pair{1, 0}}) {
    const auto c = compare_with_oracles(singular_request(n1, n2));
    const ordered_json p = {{"n1", n1}, {"n2", n2}};
    rec.close("rip_singular vs residue oracle", p, c.formula, c.residue_oracle.real(), 1e-3);
    rec.close("rip_singular vs subtraction oracle", p, c.formula, c.subtraction_oracle.real(), 1e-3);
  }

  for (int n1 = 0; n1 <= kMaxPairingOrder; ++n1)
    for (int n2 = 0; n1 + n2 <= kMaxPairingOrder; ++n2) {
      const ordered_json p = {{"n1", n1}, {"n2", n2}};
      rec.at_most("pole cancellation, unitary", p, rip_unitary(n1, n2).max_residual, 1e-9);
      rec.at_most("pole cancellation, singular", p, rip_singular(n1, n2).max_residual, 1e-9);
    }
}

// ---- 6: triple product ------------------------------------------------------------------------

void triple_product_check(Recorder& rec, std::uint64_t seed) {
  const auto tp = triple_product(0);
  const cplx direct = triple_product_direct(0);
  rec.close("triple product n=0: assembled vs direct", {{"direct_im", number(direct.imag())}}, direct.real(),
            tp.value.real(), 5e-3);

  const double lstar = completed_lambda_residue();
  auto rng = make_rng(seed, 6);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.3, 4.0);
  Worst w;
  for (int i = 0; i < 10; ++i) {
    const UpperHalfPoint z{ux(rng), uy(rng)};
    const cplx a = completed_E_at_zero(z), b = 0.5 * lstar * eval_E_deriv(z, 0.0, 1);
    w.see(std::abs(a - b), {{"z", zjson(z)}});
  }
  auto p = w.params();
  p["Lambda*"] = number(lstar);
  rec.at_most("E*(0) = (Lambda*/2) E^(1)(0)", p, w.err, 1e-6);
}

// ---- 7: Hecke ------------------------------------------------------------------------------------

void hecke(Recorder& rec, std::uint64_t seed) {
  const double L = lambda_laurent_data().residue;
  const auto reg = sample_product({{0.5, 0, true}});
  auto rng = make_rng(seed, 7);
  const auto pts = random_reduced(rng, 10, 3.0);
  for (long p : {2L, 3L}) {
    const auto t1 = hecke_T(p, reg);
    const auto t2 = hecke_T(p, t1);
    std::vector<cplx> v0(pts.size()), v1(pts.size()), v2(pts.size());
    reg.batch(pts, v0);
    t1.batch(pts, v1);
    t2.batch(pts, v2);
    const cplx dlam =
        laurent_of([p](cplx s) { return hecke_eigenvalue(p, s); }, 0.0, 0, 4, 0.1)[1];
    Worst kill, shift;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      kill.see(std::abs(v2[i] - 2.0 * v1[i] + v0[i]), {{"z", zjson(pts[i])}});
      shift.see(std::abs(v1[i] - v0[i] - dlam * L), {{"z", zjson(pts[i])}});
    }
    rec.at_most("(T(p)-1)^2 E^reg(1/2) = 0", [&] { auto j = kill.params(); j["p"] = p; return j; }(), kill.err, 1e-5);
    auto sp = shift.params();
    sp["p"] = p;
    sp["lambda_p^(1)(0)"] = number(dlam.real());
    rec.at_most("T(p) E^reg - E^reg = lambda_p^(1)(0) lambda_F^(-1)(0)", sp, shift.err, 1e-6);
  }
  const cplx c0 = iwahori_c0_derivative(2.0, -0.5);
  rec.close("lambda_F^(-1)(0) c0^(1)(-1/2), q=2", {{"closed_form", "-log 2/pi"}}, -std::log(2.0) / kPi,
            (L * c0).real(), 1e-9);
}

// ---- 8: p-adic suite -------------------------------------------------------------------------------

RandomSchwartzOptions schwartz_options(int p, int d) {
  RandomSchwartzOptions o;
  o.max_level = p == 2 ? (d == 1 ? 3 : 2) : (p == 3 ? 2 : 1);
  return o;
}

void padic_suite(Recorder& rec, std::uint64_t seed) {
  auto rng = make_rng(seed, 8);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int p : {2, 3, 5}) {
    Tally r0, r1, r2, r3, sch, ff;
    for (int d : {1, 2})
      for (int trial = 0; trial < 100; ++trial) {
        const auto phi = random_schwartz(p, d, rng, schwartz_options(p, d));
        const auto I = phi.indices();
        const ordered_json at = {{"p", p}, {"d", d}, {"trial", trial}, {"D", I.D}, {"delta", I.delta}, {"m", I.m}};
        r0.check(I.m <= I.delta - I.D && I.D <= I.delta, at);
        r1.check(phi.translate(random_gl(p, d, 4, rng)).indices() == I, at);
        for (int c : {0, 1}) {
          const auto J = phi.fourier(c).indices();
          r2.check(I.D + J.delta == -c && I.delta + J.D == -c, at);
          if (d == 2)
            for (int coord : {0, 1}) {
              const int cs[] = {coord};
              const auto K = phi.partial_fourier(cs, c).indices();
              r3.check(K.delta <= std::max(I.delta, -c - I.D) && K.D >= std::min(I.D, -c - I.delta), at);
            }
        }
        const auto F = phi.fourier();
        ff.check(exactly_equal(F.fourier(), phi.reflect()), at);
        ff.check(exactly_equal(phi.fourier(1).fourier(1), phi.reflect().scaled(Rational(ipow(p, d)))), at);

        // one ulp-scale slack on floating norms; the indices are exact
        const double q = p, sup = phi.norm(kInf), slack = 1.0 + 1e-12;
        std::vector<double> sigma(std::size_t(d), 1.0);
        if (d == 2) sigma[1] = 0.5;
        const double total = std::accumulate(sigma.begin(), sigma.end(), 0.0);
        for (double l : {1.0, 2.0, 3.5}) {
          const double nl = phi.norm(l);
          sch.check(sup <= std::pow(q, d * I.delta / l) * nl * slack, at);
          sch.check(nl <= std::pow(q, -d * I.D / l) * sup * slack, at);
          sch.check(phi.seminorm(l, sigma) <= std::pow(q, -total * I.D) * nl * slack, at);
        }
        sch.check(phi.seminorm(kInf, sigma) <= std::pow(q, -total * I.D) * sup * slack, at);
      }
    const ordered_json pp = {{"p", p}, {"instances", 200}};
    auto with = [&](const Tally& t) {
      auto j = pp;
      j.update(t.params());
      return j;
    };
    rec.exact("DdmRel (0): m <= delta - D", with(r0), r0.failures, r0.total);
    rec.exact("DdmRel (1): GL_d(Z_p) invariance of D, delta, m", with(r1), r1.failures, r1.total);
    rec.exact("DdmRel (2): D + delta(F) = delta + D(F) = -c", with(r2), r2.failures, r2.total);
    rec.exact("DdmRel (3): partial Fourier bounds", with(r3), r3.failures, r3.total);
    rec.exact("SchEquiv norm comparisons", with(sch), sch.failures, sch.total);
    rec.exact("Fourier double transform = reflection", with(ff), ff.failures, ff.total);
  }

  Tally wb, wv;
  for (double q : {2.0, 3.0, 5.0, 7.0})
    for (cplx s : {cplx(0.1, 2.0), cplx(-0.2, 0.5), cplx(0.0), cplx(0.3), cplx(0.45, -1.0), cplx(-0.4, 0.0)}) {
      const auto data = unramified_data(q, s);
      for (int n = 0; n <= 12; ++n) {
        const ordered_json at = {{"q", q}, {"s", cjson(s)}, {"n", n}};
        const cplx a = data.alpha, b = data.beta;
        if (std::abs(a - b) > 1e-3) {
          const cplx closed = std::pow(q, -0.5 * n) * (std::pow(a, n + 1) - std::pow(b, n + 1)) / (a - b);
          wv.check(std::abs(whittaker_unramified(n, data) - closed) < 1e-12 * scale(closed), at);
        }
        if (n >= 1)
          for (double eps : {0.05, 0.1, 0.2}) wb.check(whittaker_bound_check(n, data, eps), at);
      }
    }
  rec.exact("unramified Whittaker closed form", wv.params(), wv.failures, wv.total);
  rec.exact("LocWhiBdNA Whittaker bound", wb.params(), wb.failures, wb.total);
}

// ---- 9: coset algorithm -------------------------------------------------------------------------

void coset_suite(Recorder& rec, std::uint64_t seed) {
  auto rng = make_rng(seed, 9);
  Tally plus, minus;
  for (int r : {2, 3})
    for (long long N : {2, 3, 4, 6})
      for (int trial = 0; trial < 25; ++trial) {
        const auto A = random_sl(r, 6 * r, rng);
        const ordered_json at = {{"r", r}, {"N", N}, {"A", A.to_string()}};
        plus.check(check_triple(coset_decompose(A, N), A).ok(), at);
        minus.check(check_triple(coset_decompose_minus(A, N), A).ok(), at);
      }
  rec.exact("A = gamma N- N+, membership and entry bound", plus.params(), plus.failures, plus.total);
  rec.exact("A = gamma N+ N-, membership and entry bound", minus.params(), minus.failures, minus.total);
}

// ---- 10: lattice sums --------------------------------------------------------------------------------

std::string field_name(long long d) { return d == 1 ? "Q" : "Q(sqrt(" + std::to_string(d) + "))"; }

void lattice_suite(Recorder& rec, std::uint64_t) {
  const double c = 4.0;  // > [F:Q] for every field below
  for (long long d : {1LL, -1LL, 2LL}) {
    const QuadField F{d};
    const double gam = F.r2() > 0 ? 2.0 * c : c;
    for (long long m : {1LL, 2LL, 3LL}) {
      const auto L = inverse_ideal_lattice(F, m);
      const double N = L.norm.convert_to<double>();
      // tail at 1e-3 of the smallest nonzero term keeps the ratio to 0.1%
      const auto tail_for = [&](double t) { return 1e-3 * std::min(1.0, std::pow(t / double(m), -gam)); };
      double lo = kInfNorm, hi = 0.0, t_lo = 0, t_hi = 0;
      double su = 0, sl = 0, suu = 0, sul = 0, n = 0;
      for (int t = 4; t <= 64; ++t) {
        const auto s = lattice_sum(L, t, c, tail_for(t));
        const double ratio = s.value * std::pow(double(t), c) / std::pow(N, 3.0 * c);
        if (ratio < lo) lo = ratio, t_lo = t;
        if (ratio > hi) hi = ratio, t_hi = t;
        const double u = std::log(double(t)), v = std::log(s.value);
        su += u, sl += v, suu += u * u, sul += u * v, n += 1;
      }
      const ordered_json p = {{"field", field_name(d)},   {"ideal", m},
                              {"c", c},                   {"t", {4, 64}},
                              {"min", number(lo)},        {"t_min", t_lo},
                              {"max", number(hi)},        {"t_max", t_hi},
                              {"log_slope", number((n * sul - su * sl) / (n * suu - su * su))}};
      rec.at_most("sum(t) t^c / |o/J|^{3c} variation", p, hi / lo, 10.0);

      Tally cert;
      for (double t : {4.0, 16.0, 64.0}) {
        auto a = lattice_sum(L, t, c, tail_for(t));
        if (!std::isfinite(a.radius)) a = lattice_sum_at_radius(L, t, c, 64.0 * t);
        const auto b = lattice_sum_at_radius(L, t, c, 2.0 * a.radius);
        cert.check(std::abs(b.value - a.value) <= a.error && b.error <= a.error,
                   {{"t", t}, {"radius", number(a.radius)}, {"error", number(a.error)}});
      }
      auto cp = cert.params();
      cp["field"] = field_name(d);
      cp["ideal"] = m;
      rec.exact("certified tail under radius doubling", cp, cert.failures, cert.total);
    }
  }
}

// ---- 11: Mellin / ergodic ---------------------------------------------------------------------------------

struct GammaMix {
  std::vector<cplx> a;
  std::vector<int> b;
  std::vector<double> lam;

  GrowthCertifiedFn fn() const {
    return {[m = *this](double y) {
              cplx s = 0.0;
              for (std::size_t j = 0; j < m.a.size(); ++j) s += m.a[j] * std::pow(y, m.b[j]) * std::exp(-m.lam[j] * y);
              return s;
            },
            0.0,
            {}};
  }
  PeriodicMellinFn mellin() const {
    return {[m = *this](cplx s) {
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

void mellin_suite(Recorder& rec, std::uint64_t seed) {
  auto rng = make_rng(seed, 11);

  const std::vector<std::pair<std::string, GrowthCertifiedFn>> fs = {
      {"exp(-y)", {[](double y) { return cplx(std::exp(-y)); }, 0.0, {}}},
      {"exp(-y^2)", {[](double y) { return cplx(std::exp(-y * y)); }, 0.0, {}}},
      {"exp(-y-1/y)", {[](double y) { return cplx(std::exp(-y - 1.0 / y)); }, -5.0, {}}},
      {"y^2 exp(-y) + i exp(-2y)", {[](double y) { return cplx(y * y * std::exp(-y), std::exp(-2.0 * y)); }, 0.0, {}}},
  };
  Worst rt;
  for (const auto& [name, f] : fs) {
    const auto M = mellin_of(f);
    for (double y : {0.3, 1.0, 2.5}) rt.see(std::abs(mellin_inv(M, y, 1.2) - f(y)), {{"f", name}, {"y", y}});
  }
  rec.at_most("continuous round trip", rt.params(), rt.err, 1e-6);

  // discrete pair: every constant-free inequality, 1e-12 relative float slack
  Tally disc;
  Worst inv;
  const double slack = 1 + 1e-12;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_discrete(rng, trial % 2 == 1);
    const auto Mf = mellin_of(f);
    const double sigma = std::max(0.0, f.growth()) + 0.3;
    const ordered_json at = {{"trial", trial}, {"q", f.q}, {"n0", f.n0}, {"sigma", number(sigma)}};
    const double binf = seminorm_B(f, kInfNorm, sigma), b1 = seminorm_B(f, 1.0, sigma), b2 = seminorm_B(f, 2.0, sigma);
    const double hinf = seminorm_H(Mf, kInfNorm, 0, sigma), h1 = seminorm_H(Mf, 1.0, 0, sigma),
                 h2 = seminorm_H(Mf, 2.0, 0, sigma);
    disc.check(binf <= b1 * slack, at);
    disc.check(binf <= b2 * slack, at);
    disc.check(h1 <= hinf * slack, at);
    disc.check(h2 <= hinf * slack, at);
    disc.check(hinf <= b1 * slack, at);
    double finf = 0.0;
    for (long long n = f.n0 - 2; n <= f.n_last() + 3; ++n) {
      const cplx back = mellin_inv(Mf, n, sigma);
      inv.see(std::abs(back - f(n)), at);
      finf = std::max(finf, std::abs(back) * std::pow(f.q, -double(n) * sigma));
    }
    disc.check(finf <= h1 * slack, at);
  }
  rec.exact("discrete B/H inequalities", disc.params(), disc.failures, disc.total);
  rec.at_most("discrete round trip", inv.params(), inv.err, 1e-6);

  // continuous pair, quadrature slack 1e-9
  Tally cont;
  std::uniform_real_distribution<double> sig(0.3, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto mix = random_mix(rng);
    const auto f = mix.fn();
    const auto M = mix.mellin();
    const double sigma = sig(rng);
    const int k = trial % 3;
    const ordered_json at = {{"trial", trial}, {"k", k}, {"sigma", number(sigma)}};
    cont.check(seminorm_H(M, kInfNorm, k, sigma) <= seminorm_B(f, 1.0, k, sigma) * (1 + 1e-9), at);
    cont.check(seminorm_B(inverse_of(M, sigma), kInfNorm, k, sigma) <= seminorm_H(M, 1.0, k, sigma) * (1 + 1e-9), at);
  }
  rec.exact("continuous B/H inequalities", cont.params(), cont.failures, cont.total);

  Tally erg;
  Worst quad;
  std::uniform_real_distribution<double> th(-3.0, 3.0), tt(0.1, 50.0);
  std::uniform_int_distribution<int> ni(-4, 4), dim(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim(rng);
    std::vector<double> theta(std::size_t(d), 0.0), x(std::size_t(d), 0.0);
    std::vector<long long> nv(std::size_t(d), 0);
    for (int i = 0; i < d; ++i) theta[i] = th(rng), x[i] = th(rng), nv[i] = ni(rng);
    const double T = tt(rng);
    const cplx avg = ergodic_average(theta, nv, T, x);
    const ordered_json at = {{"trial", trial}, {"T", number(T)}};
    erg.check(std::abs(avg) <= ergodic_bound(theta, nv, T), at);
    quad.see(std::abs(avg - ergodic_average_numeric(theta, nv, T, x)), at);
  }
  rec.exact("ergodic bound 2/(T |n.theta|)", erg.params(), erg.failures, erg.total);
  rec.at_most("ergodic closed form vs quadrature", quad.params(), quad.err, 1e-10);
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "lambda machinery", "special", 10, lambda_machinery},
      {2, "Eisenstein correctness", "special", 30, eisenstein},
      {3, "regularization engine", "regularize", 300, regularization},
      {4, "singular identities", "regularize", 120, singular_identities},
      {5, "pairing theorems", "pairings", 600, pairing_theorems},
      {6, "triple product (n=0)", "pairings", 900, triple_product_check},
      {7, "Hecke", "regularize", 120, hecke},
      {8, "p-adic suite", "padic", 60, padic_suite},
      {9, "coset algorithm", "coset", 60, coset_suite},
      {10, "lattice sums", "coset", 120, lattice_suite},
      {11, "Mellin/ergodic", "mellin", 60, mellin_suite},
  };
  return all;
}

SuiteReport run_criterion(const Criterion& c, std::uint64_t seed) {
  SuiteReport r;
  r.suite = "criterion-" + std::to_string(c.id);
  r.seed = seed;
  Recorder rec(r);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(rec, seed);
  } catch (const std::exception& e) {
    rec.fail("exception", ordered_json::object(), e.what());
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"special", "regularize", "pairings", "padic", "coset", "mellin"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int jobs) {
  if (name != "all" && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw UsageError("unknown suite '" + name + "'");
  std::vector<const Criterion*> picked;
  for (const auto& c : criteria())
    if (name == "all" || c.suite == name) picked.push_back(&c);

  std::vector<SuiteReport> parts(picked.size());
  if (jobs > 1) {
    std::vector<std::future<SuiteReport>> futs;
    std::size_t next = 0;
    // at most `jobs` in flight; results land in their fixed slots
    std::vector<std::size_t> slot;
    while (next < picked.size() || !futs.empty()) {
      while (next < picked.size() && int(futs.size()) < jobs) {
        futs.push_back(std::async(std::launch::async, run_criterion, std::cref(*picked[next]), seed));
        slot.push_back(next++);
      }
      parts[slot.front()] = futs.front().get();
      futs.erase(futs.begin());
      slot.erase(slot.begin());
    }
  } else {
    for (std::size_t i = 0; i < picked.size(); ++i) parts[i] = run_criterion(*picked[i], seed);
  }

  SuiteReport out;
  out.suite = name;
  out.seed = seed;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (auto& c : parts[i].cases) {
      c.id = "c" + std::to_string(picked[i]->id) + "." + c.id;
      out.cases.push_back(std::move(c));
    }
    out.wall_time += parts[i].wall_time;
  }
  return out;
}

}  // namespace regint::cli
