#include <doctest.h>

#include <cmath>

#include "regint/errors.hpp"
#include "regint/lattice.hpp"

using namespace regint;

TEST_CASE("integer matrix basics") {
  const IntMatrix A{{2, 4}, {6, 8}};
  CHECK(A.det() == -8);
  CHECK(IntMatrix::parse("2,4;6,8") == A);
  CHECK(A.to_string() == "2,4;6,8");
  const IntMatrix S{{2, 1, 0}, {3, 2, 5}, {1, 1, 3}};
  CHECK(S.det() == -2);
  const IntMatrix U{{1, 2, 3}, {0, 1, 4}, {5, 6, 0}};
  CHECK(U.det() == 1);
  CHECK(U * U.inverse_unimodular() == IntMatrix::identity(3));
  CHECK_THROWS_AS(A.inverse_unimodular(), SingularMatrix);
  CHECK_THROWS_AS(IntMatrix::parse("1,2;3"), DomainError);
}

TEST_CASE("Smith normal form") {
  const auto I = smith_normal_form(IntMatrix::identity(3));
  CHECK(I.D == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).D == IntMatrix{{2, 0}, {0, 4}});
  const IntMatrix A{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(A);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  CHECK(s.U * A * s.V == s.D);
  CHECK_THROWS_AS(smith_normal_form(IntMatrix{{1, 2}, {2, 4}}), SingularMatrix);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> e(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 2 + trial % 3;
    IntMatrix M(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) M(i, j) = e(rng);
    if (M.det() == 0) continue;
    const auto f = smith_normal_form(M);
    CHECK(f.U * M * f.V == f.D);
    CHECK(abs(f.U.det()) == 1);
    CHECK(abs(f.V.det()) == 1);
    BigInt prod = 1;
    for (int i = 0; i < r; ++i) {
      prod *= f.D(i, i);
      CHECK(f.D(i, i) > 0);
      if (i + 1 < r) CHECK(f.D(i + 1, i + 1) % f.D(i, i) == 0);
      for (int j = 0; j < r; ++j)
        if (i != j) CHECK(f.D(i, j) == 0);
    }
    CHECK(prod == abs(M.det()));
  }
}

TEST_CASE("coset decomposition: small cases") {
  const auto id = coset_decompose(IntMatrix::identity(2), 2);
  CHECK(id.gamma == IntMatrix::identity(2));
  CHECK(id.n_minus == IntMatrix::identity(2));
  CHECK(id.n_plus == IntMatrix::identity(2));

  const IntMatrix w{{0, -1}, {1, 0}};
  const auto t = coset_decompose(w, 2);
  CHECK(check_triple(t, w).ok());
  CHECK((w * t.representative().inverse_unimodular())(1, 0) % 2 == 0);
  // brute force: some unipotent pair with entries in {-1, 0, 1} works
  bool found = false;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y) {
      const IntMatrix rep = IntMatrix{{1, 0}, {x, 1}} * IntMatrix{{1, y}, {0, 1}};
      found = found || in_gamma0(w * rep.inverse_unimodular(), 2);
    }
  CHECK(found);

  CHECK_THROWS_AS(coset_decompose(IntMatrix{{2, 0}, {0, 1}}, 3), DomainError);
  CHECK_THROWS_AS(coset_decompose(w, 1), DomainError);
}

TEST_CASE("coset decomposition: random matrices") {
  std::mt19937_64 rng(11);
  for (int r : {2, 3, 4})
    for (long long N : {2, 3, 4, 6, 12}) {
      for (int trial = 0; trial < 50; ++trial) {
        const auto A = random_sl(r, 6 * r, rng);
        const auto t = coset_decompose(A, N);
        const auto rep = check_triple(t, A);
        CHECK(rep.ok());
        const auto m = coset_decompose_minus(A, N);
        CHECK(check_triple(m, A).ok());

        // same coset for gamma' A
        const auto g = coset_decompose(random_sl(r, 4, rng), N).gamma;
        const auto t2 = coset_decompose(g * A, N);
        CHECK(in_gamma0(t.representative() * t2.representative().inverse_unimodular(), BigInt(N)));

        // inverse transpose swaps the two conventions
        const auto At = A.inverse_unimodular().transpose();
        const auto mt = coset_decompose_minus(At, N);
        const auto dual = t.n_minus.inverse_unimodular().transpose() * t.n_plus.inverse_unimodular().transpose();
        CHECK(in_gamma0_minus(mt.representative() * dual.inverse_unimodular(), BigInt(N)));
      }
    }
  // entries stay exact far beyond 64 bits
  const auto big = random_sl(3, 120, rng);
  const auto t = coset_decompose(big, 5);
  CHECK(check_triple(t, big).ok());
}

TEST_CASE("embeddings and f_c") {
  const QuadField Qi{-1}, Q2{2}, Q{1};
  CHECK(embed_sigma({1, 1}, Qi) == std::vector<double>{1.0, 1.0});
  const auto e = embed_sigma({1, 1}, Q2);
  CHECK(e[0] == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(e[1] == doctest::Approx(1 - std::sqrt(2.0)));
  const FieldElement a{BigRational(1, 3), BigRational(2, 5)}, b{BigRational(-4, 7), BigRational(1, 2)};
  const auto sa = embed_sigma(a, Q2), sb = embed_sigma(b, Q2), sab = embed_sigma({a.x + b.x, a.y + b.y}, Q2);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(sab[i] - sa[i] - sb[i]) < 1e-15);
  CHECK_THROWS_AS(embed_sigma({1, 0}, QuadField{4}), UnsupportedField);
  CHECK_THROWS_AS(embed_sigma({1, 1}, Q), DomainError);

  CHECK(f_c({0.5, -0.2}, 3, 2, 0) == 1.0);
  CHECK(f_c({2.0}, 3, 1, 0) == doctest::Approx(1.0 / 8));
  CHECK(f_c({2.0, 0.0}, 3, 0, 1) == doctest::Approx(std::pow(2.0, -6)));
  CHECK_THROWS_AS(f_c({1.0}, 0.0, 1, 0), DomainError);
}

TEST_CASE("lattice sums") {
  // Z[i], t = 1, c = 5 against direct summation to radius 50
  const auto Zi = inverse_ideal_lattice(QuadField{-1}, 1);
  double direct = 0.0;
  for (int a = -50; a <= 50; ++a)
    for (int b = -50; b <= 50; ++b) {
      const double n2 = double(a * a + b * b);
      if (n2 == 0 || n2 > 2500) continue;
      direct += std::min(1.0, std::pow(n2, -5.0));
    }
  const auto s = lattice_sum(Zi, 1.0, 5.0, 1e-10);
  CHECK(std::abs(s.value - direct) < 1e-8);
  CHECK(s.error <= 1e-10);

  // refining the radius moves the value by less than the certified error
  for (const auto& L : {Zi, inverse_ideal_lattice(QuadField{1}, 3), inverse_ideal_lattice(QuadField{5}, 2),
                        inverse_ideal_lattice(QuadField{-3}, 2)}) {
    const auto a = lattice_sum(L, 0.7, 4.0, 1e-3);
    const auto b = lattice_sum_at_radius(L, 0.7, 4.0, 2 * a.radius);
    CHECK(std::abs(b.value - a.value) <= a.error);
    CHECK(b.error < a.error);
  }

  // Z: t^{-c} rate
  const auto Z = inverse_ideal_lattice(QuadField{1}, 1);
  const double c = 3.0;
  double lo = 1e300, hi = 0.0;
  for (double t : {4.0, 8.0, 16.0, 32.0}) {
    const double ratio = lattice_sum(Z, 2 * t, c, 1e-12).value * std::pow(2 * t, c) /
                         (lattice_sum(Z, t, c, 1e-12).value * std::pow(t, c));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 1.01);
  CHECK(lattice_sum(Z, 1e3, 6.0, 1e-12).value < 1e-6);
  CHECK(std::abs(lattice_sum(Z, 10.0, c, 1e-14).value - 2.0 * 1.2020569031595942 * 1e-3) < 1e-12);

  CHECK_THROWS_AS(lattice_sum(Z, 1.0, 1.0, 1e-6), NonConvergent);
  CHECK_THROWS_AS(lattice_sum(inverse_ideal_lattice(QuadField{2}, 1), 1.0, 2.0, 1e-6), NonConvergent);
  CHECK_NOTHROW(lattice_sum(Zi, 1.0, 1.5, 1e-2));
}

TEST_CASE("adelic sums over Q") {
  const double zeta4 = std::pow(3.141592653589793, 4) / 90.0;
  const auto s = adelic_sum_Q({1.0, {}}, 1, 0.0, 4.0);
  CHECK(std::abs(s.value - 2.0 * zeta4) < 1e-9);

  // a larger level enlarges the lattice
  for (double y : {0.3, 1.0, 4.0})
    CHECK(adelic_sum_Q({y, {}}, 4, 0.5, 3.0).value >= adelic_sum_Q({y, {}}, 1, 0.5, 3.0).value);
  // only |y|_A and y_inf M matter: moving a prime between the parts changes nothing
  const auto a = adelic_sum_Q({2.0, {{3, 1}}}, 2, 0.5, 3.0);
  const auto b = adelic_sum_Q({2.0 / 3.0, {}}, 2, 0.5, 3.0);
  CHECK(std::abs(a.value - b.value) < 1e-9 * b.value);

  // both bounds hold with one constant over a grid
  double worst = 0.0;
  for (double c1 : {0.0, 0.5, 1.0})
    for (double dc : {2.0, 3.0})
      for (long long level : {1, 2, 3, 4, 6, 8})
        for (int k = -6; k <= 6; ++k)
          for (int e2 : {-1, 0, 1}) {
            const IdeleQ y{std::pow(2.0, 0.5 * k), {{2, e2}}};
            const auto r = adelic_sum_Q(y, level, c1, c1 + dc);
            worst = std::max(worst, r.value / std::min(r.bound_classical, r.bound_growth));
          }
  CHECK(worst < 10.0);

  // with |o/J|^{-1} in the small-|y| bound the ratio grows like |o/J|^2
  const double ys = 1e-4;  // deep in the |y| |o/J|^2 << 1 regime
  const auto r1 = adelic_sum_Q({ys, {}}, 1, 0.0, 3.0), r8 = adelic_sum_Q({ys, {}}, 8, 0.0, 3.0);
  const auto inverse_norm_bound = [](double y, double n) { return std::pow(y, -1.0) / n * std::pow(1 + y * n * n, 3.0); };
  CHECK(r8.value / inverse_norm_bound(ys, 8) > 20 * r1.value / inverse_norm_bound(ys, 1));

  CHECK_THROWS_AS(adelic_sum_Q({1.0, {}}, 1, 0.0, 1.0), NonConvergent);
}
