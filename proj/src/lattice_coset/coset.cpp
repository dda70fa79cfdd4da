#include <functional>

#include "regint/errors.hpp"
#include "regint/lattice.hpp"

namespace regint {
namespace {

// returns g = gcd(a, b) >= 0 and x, y with x a + y b = g
BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1, r1 = t;
    t = x0 - q * x1;
    x0 = x1, x1 = t;
    t = y0 - q * y1;
    y0 = y1, y1 = t;
  }
  if (r0 < 0) r0 = -r0, x0 = -x0, y0 = -y0;
  x = x0, y = y0;
  return r0;
}

BigInt gcd_abs(BigInt a, BigInt b) {
  BigInt x, y;
  return egcd(a, b, x, y);
}

// representative in (-N/2, N/2]
BigInt centered_mod(const BigInt& x, const BigInt& N) {
  BigInt r = x % N;
  if (r < 0) r += N;
  if (2 * r > N) r -= N;
  return r;
}

IntMatrix embed_lower_right(const IntMatrix& m) {
  const int r = m.rows() + 1;
  IntMatrix out = IntMatrix::identity(r);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i + 1, j + 1) = m(i, j);
  return out;
}

void check_input(const IntMatrix& A, const BigInt& N) {
  if (A.rows() != A.cols() || A.rows() < 2) throw DomainError("need a square matrix of rank >= 2");
  if (N < 2) throw DomainError("level must be >= 2");
  if (A.det() != 1) throw DomainError("matrix is not in SL_r(Z)");
}

// Search k with u1' = u1 + sum k_j a_j coprime to N and to some u_j' = u_j - k_j a_1. Returns j.
int coprime_shift(std::vector<BigInt>& u, const std::vector<BigInt>& a, const BigInt& N) {
  const int r = int(u.size());
  for (int K = 0; K <= 64; ++K) {
    // all k in [-K, K]^{r-1} with max |k_j| = K
    std::vector<int> k(std::size_t(r - 1), -K);
    for (;;) {
      int mx = 0;
      for (int x : k) mx = std::max(mx, std::abs(x));
      if (mx == K) {
        BigInt u1 = u[0];
        for (int j = 1; j < r; ++j) u1 += BigInt(k[j - 1]) * a[j];
        if (gcd_abs(u1, N) == 1)
          for (int j = 1; j < r; ++j)
            if (gcd_abs(u1, u[j] - BigInt(k[j - 1]) * a[0]) == 1) {
              u[0] = u1;
              for (int i = 1; i < r; ++i) u[i] -= BigInt(k[i - 1]) * a[0];  // keeps u . a = 1
              return j;
            }
      }
      int pos = 0;
      while (pos < r - 1 && k[pos] == K) k[pos++] = -K;
      if (pos == r - 1) break;
      ++k[pos];
    }
  }
  throw ConvergenceError("no coprime shift found within the search window");
}

struct Split {
  IntMatrix gamma, lower, upper;
};

Split decompose_rec(const IntMatrix& A, const BigInt& N) {
  const int r = A.rows();
  if (r == 1) return {A, IntMatrix::identity(1), IntMatrix::identity(1)};

  std::vector<BigInt> a(static_cast<std::size_t>(r)), u(std::size_t(r), 0);
  for (int i = 0; i < r; ++i) a[i] = A(i, 0);
  BigInt g = a[0];
  u[0] = 1;
  for (int i = 1; i < r; ++i) {
    BigInt x, y;
    const BigInt g2 = egcd(g, a[i], x, y);
    for (int j = 0; j < i; ++j) u[j] *= x;
    u[i] = y;
    g = g2;
  }
  if (g < 0) {
    g = -g;
    for (auto& x : u) x = -x;
  }
  if (g != 1) throw DomainError("first column is not primitive");

  const int j = coprime_shift(u, a, N);
  BigInt x, y;
  egcd(u[0], N * u[j], x, y);  // x u1' + y N u_j' = 1
  const BigInt v2 = x, v1 = -y;

  IntMatrix B = IntMatrix::identity(r);
  for (int c = 0; c < r; ++c) B(0, c) = u[c];
  B(j, 0) = N * v1;
  B(j, j) = v2;

  const IntMatrix BA = B * A;  // [[1, beta^T], [alpha, A~]]
  IntMatrix alpha(r - 1, 1), beta(1, r - 1), Ap(r - 1, r - 1);
  for (int i = 1; i < r; ++i) {
    alpha(i - 1, 0) = BA(i, 0);
    beta(0, i - 1) = BA(0, i);
  }
  for (int i = 1; i < r; ++i)
    for (int c = 1; c < r; ++c) Ap(i - 1, c - 1) = BA(i, c) - BA(i, 0) * BA(0, c);

  const Split sub = decompose_rec(Ap, N);
  const IntMatrix alpha2 = sub.gamma.inverse_unimodular() * alpha;
  IntMatrix nm = IntMatrix::identity(r), np = IntMatrix::identity(r);
  for (int i = 1; i < r; ++i) {
    nm(i, 0) = alpha2(i - 1, 0);
    np(0, i) = beta(0, i - 1);
  }
  Split out;
  out.gamma = B.inverse_unimodular() * embed_lower_right(sub.gamma);
  out.lower = nm * embed_lower_right(sub.lower);
  out.upper = embed_lower_right(sub.upper) * np;
  return out;
}

IntMatrix reverse_conjugate(const IntMatrix& m) {  // J m J, J the antidiagonal
  const int r = m.rows();
  IntMatrix out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out(i, j) = m(r - 1 - i, r - 1 - j);
  return out;
}

}  // namespace

bool in_gamma0(const IntMatrix& g, const BigInt& N) {
  if (g.rows() != g.cols() || g.det() != 1) return false;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (g(i, j) % N != 0) return false;
  return true;
}

bool in_gamma0_minus(const IntMatrix& g, const BigInt& N) { return in_gamma0(g.transpose(), N); }

bool in_gamma(const IntMatrix& g, const BigInt& N) {
  if (g.rows() != g.cols() || g.det() != 1) return false;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if ((g(i, j) - (i == j ? 1 : 0)) % N != 0) return false;
  return true;
}

bool is_lower_unipotent(const IntMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool is_upper_unipotent(const IntMatrix& m) { return is_lower_unipotent(m.transpose()); }

IntMatrix CosetTriple::representative() const { return minus_order ? n_plus * n_minus : n_minus * n_plus; }

CosetTriple coset_decompose(const IntMatrix& A, const BigInt& N) {
  check_input(A, N);
  const Split s = decompose_rec(A, N);
  const int r = A.rows();
  CosetTriple t;
  t.N = N;
  t.n_minus = s.lower;
  t.n_plus = s.upper;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) {
        t.n_minus(i, j) = centered_mod(t.n_minus(i, j), N);
        t.n_plus(i, j) = centered_mod(t.n_plus(i, j), N);
      }
  t.gamma = A * t.representative().inverse_unimodular();
  if (!in_gamma0(t.gamma, N)) throw ConvergenceError("internal: reduced representative left the coset");
  return t;
}

CosetTriple coset_decompose_minus(const IntMatrix& A, const BigInt& N) {
  check_input(A, N);
  const CosetTriple p = coset_decompose(reverse_conjugate(A), N);
  CosetTriple t;
  t.N = N;
  t.minus_order = true;
  t.gamma = reverse_conjugate(p.gamma);
  t.n_plus = reverse_conjugate(p.n_minus);
  t.n_minus = reverse_conjugate(p.n_plus);
  return t;
}

MembershipReport check_triple(const CosetTriple& t, const IntMatrix& A) {
  MembershipReport rep;
  rep.gamma_in_group = t.minus_order ? in_gamma0_minus(t.gamma, t.N) : in_gamma0(t.gamma, t.N);
  rep.unipotent_shapes = is_lower_unipotent(t.n_minus) && is_upper_unipotent(t.n_plus);
  rep.entries_reduced = true;
  for (const IntMatrix* m : {&t.n_minus, &t.n_plus})
    for (int i = 0; i < m->rows(); ++i)
      for (int j = 0; j < m->cols(); ++j)
        if (i != j && 2 * abs((*m)(i, j)) > t.N) rep.entries_reduced = false;
  rep.product_exact = t.gamma * t.representative() == A;
  return rep;
}

IntMatrix random_sl(int r, int steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(0, r - 1), k(-3, 3);
  IntMatrix m = IntMatrix::identity(r);
  for (int s = 0; s < steps; ++s) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int f = k(rng);
    for (int c = 0; c < r; ++c) m(i, c) += f * m(j, c);  // left multiply by I + f E_ij
  }
  return m;
}

}  // namespace regint
