#include <cmath>
#include <limits>

#include "regint/errors.hpp"
#include "regint/lattice.hpp"
#include "regint/special_fn.hpp"

namespace regint {
namespace {

constexpr long long kMaxPoints = 50'000'000;
constexpr double kRankOneDirect = 1 << 18;  // beyond this the closed tail is faster

bool squarefree(long long d) {
  d = std::llabs(d);
  for (long long k = 2; k * k <= d; ++k)
    if (d % (k * k) == 0) return false;
  return true;
}

// decay exponent g with f_c(x) <= (sqrt(r1 + r2) / |x|)^g
double decay_exponent(const QuadField& F, double c) { return F.r1() > 0 ? c : 2.0 * c; }

struct Geometry {
  std::vector<std::vector<double>> B, Binv;
  double covol = 0.0;
  double half_diam = 0.0;  // max |B lambda| over lambda in [-1/2, 1/2]^r
};

Geometry geometry(const QuadLattice& L, double t) {
  Geometry g;
  g.B = embedding_matrix(L);
  for (auto& row : g.B)
    for (auto& x : row) x *= t;
  const int r = int(g.B.size());
  if (r == 1) {
    g.covol = std::abs(g.B[0][0]);
    g.Binv = {{1.0 / g.B[0][0]}};
  } else {
    const double det = g.B[0][0] * g.B[1][1] - g.B[0][1] * g.B[1][0];
    g.covol = std::abs(det);
    g.Binv = {{g.B[1][1] / det, -g.B[0][1] / det}, {-g.B[1][0] / det, g.B[0][0] / det}};
  }
  if (!(g.covol > 0)) throw SingularMatrix("embedding matrix is singular");
  for (int mask = 0; mask < (1 << r); ++mask) {
    double n2 = 0.0;
    for (int i = 0; i < r; ++i) {
      double x = 0.0;
      for (int j = 0; j < r; ++j) x += g.B[i][j] * ((mask >> j & 1) ? 0.5 : -0.5);
      n2 += x * x;
    }
    g.half_diam = std::max(g.half_diam, std::sqrt(n2));
  }
  return g;
}

double tail_bound_at(const QuadLattice& L, const Geometry& g, double c, double R) {
  const int r = L.field.degree();
  const double gam = decay_exponent(L.field, c);
  const double h = g.half_diam;
  if (R <= h) return std::numeric_limits<double>::infinity();
  const double sphere = r == 1 ? 2.0 : 2.0 * kPi;
  const double k = L.field.r1() + L.field.r2();
  return std::pow(k, gam / 2) * std::pow(1.0 + h / R, gam) / g.covol * sphere * std::pow(R - h, r - gam) / (gam - r);
}

void check_convergence(const QuadLattice& L, double c) {
  if (!(c > 0)) throw DomainError("c must be positive");
  if (!(decay_exponent(L.field, c) > L.field.degree()))
    throw NonConvergent("c = " + std::to_string(c) + " too small for a certified tail on this field");
}

// Rank one: sum_{n != 0} f_c(s n) with the n^{-c} tail from Euler-Maclaurin.
LatticeSumResult rank_one_sum(double s, double c, bool include_zero) {
  LatticeSumResult out;
  const long long n0 = (long long)std::floor(1.0 / s);
  const long long n1 = n0 + 4096;
  double acc = double(n0);
  for (long long n = n1; n > n0; --n) acc += std::pow(s * double(n), -c);
  const double x = double(n1);
  const double tail = std::pow(x, 1.0 - c) / (c - 1.0) - 0.5 * std::pow(x, -c) + c / 12.0 * std::pow(x, -c - 1.0);
  acc += std::pow(s, -c) * tail;
  out.value = 2.0 * acc + (include_zero ? 1.0 : 0.0);
  out.error = 2.0 * std::pow(s, -c) * c * (c + 1.0) * (c + 2.0) / 720.0 * std::pow(x, -c - 3.0) + 1e-15 * out.value;
  out.radius = std::numeric_limits<double>::infinity();
  out.points = 2 * n1;
  return out;
}

}  // namespace

void validate(const QuadField& F) {
  if (F.d == 1) return;
  if (F.d == 0 || !squarefree(F.d)) throw UnsupportedField("d must be squarefree and != 0");
}

std::vector<double> embed_sigma(const FieldElement& a, const QuadField& F) {
  validate(F);
  const double x = a.x.convert_to<double>(), y = a.y.convert_to<double>();
  if (F.d == 1) {
    if (a.y != 0) throw DomainError("element of Q has a sqrt part");
    return {x};
  }
  const double s = std::sqrt(double(std::llabs(F.d)));
  if (F.d > 0) return {x + y * s, x - y * s};
  return {x, y * s};
}

double f_c(const std::vector<double>& v, double c, int r1, int r2) {
  if (!(c > 0)) throw DomainError("c must be positive");
  if (int(v.size()) != r1 + 2 * r2) throw DomainError("vector does not match the signature");
  double f = 1.0;
  for (int i = 0; i < r1; ++i) f *= std::min(1.0, std::pow(std::abs(v[i]), -c));
  for (int j = 0; j < r2; ++j) f *= std::min(1.0, std::pow(std::hypot(v[r1 + 2 * j], v[r1 + 2 * j + 1]), -2.0 * c));
  return f;
}

QuadLattice inverse_ideal_lattice(const QuadField& F, long long m) {
  validate(F);
  if (m < 1) throw DomainError("ideal generator must be a positive integer");
  QuadLattice L;
  L.field = F;
  const BigRational inv(1, m);
  L.basis.push_back({inv, 0});
  if (F.d != 1) {
    const bool one_mod_4 = ((F.d % 4) + 4) % 4 == 1;
    L.basis.push_back(one_mod_4 ? FieldElement{inv / 2, inv / 2} : FieldElement{0, inv});
  }
  L.norm = pow(BigInt(m), unsigned(F.degree()));
  return L;
}

std::vector<std::vector<double>> embedding_matrix(const QuadLattice& L) {
  const int r = L.field.degree();
  if (int(L.basis.size()) != r) throw DomainError("basis size does not match the degree");
  std::vector<std::vector<double>> B(static_cast<std::size_t>(r), std::vector<double>(static_cast<std::size_t>(r)));
  for (int j = 0; j < r; ++j) {
    const auto col = embed_sigma(L.basis[j], L.field);
    for (int i = 0; i < r; ++i) B[i][j] = col[i];
  }
  return B;
}

LatticeSumResult lattice_sum_at_radius(const QuadLattice& L, double t, double c, double radius, bool include_zero) {
  if (!(t > 0)) throw DomainError("t must be positive");
  check_convergence(L, c);
  const auto g = geometry(L, t);
  const int r = L.field.degree(), r1 = L.field.r1(), r2 = L.field.r2();
  LatticeSumResult out;
  out.radius = radius;
  out.error = tail_bound_at(L, g, c, radius);

  std::vector<long long> bound(static_cast<std::size_t>(r));
  double box = 1.0;
  for (int i = 0; i < r; ++i) {
    double row = 0.0;
    for (int j = 0; j < r; ++j) row += g.Binv[i][j] * g.Binv[i][j];
    bound[i] = (long long)std::floor(radius * std::sqrt(row)) + 1;
    box *= 2.0 * double(bound[i]) + 1.0;
  }
  if (box > double(kMaxPoints)) throw BudgetExceeded("lattice enumeration box too large");

  std::vector<double> v(static_cast<std::size_t>(r));
  const double R2 = radius * radius;
  auto visit = [&](const std::vector<long long>& n) {
    double n2 = 0.0;
    bool zero = true;
    for (int i = 0; i < r; ++i) {
      v[i] = 0.0;
      for (int j = 0; j < r; ++j) v[i] += g.B[i][j] * double(n[j]);
      n2 += v[i] * v[i];
      zero = zero && n[i] == 0;
    }
    if (n2 > R2 || (zero && !include_zero)) return;
    out.value += f_c(v, c, r1, r2);
    ++out.points;
  };
  std::vector<long long> n(static_cast<std::size_t>(r));
  if (r == 1) {
    for (n[0] = -bound[0]; n[0] <= bound[0]; ++n[0]) visit(n);
  } else {
    for (n[0] = -bound[0]; n[0] <= bound[0]; ++n[0])
      for (n[1] = -bound[1]; n[1] <= bound[1]; ++n[1]) visit(n);
  }
  return out;
}

LatticeSumResult lattice_sum(const QuadLattice& L, double t, double c, double tail_bound, bool include_zero) {
  if (!(tail_bound > 0)) throw DomainError("tail bound must be positive");
  if (!(t > 0)) throw DomainError("t must be positive");
  check_convergence(L, c);
  const auto g = geometry(L, t);
  double lo = g.half_diam, hi = 2.0 * g.half_diam + 1.0;
  const bool rank_one = L.field.degree() == 1;
  while (tail_bound_at(L, g, c, hi) > tail_bound) {
    lo = hi;
    hi *= 2.0;
    if (rank_one && 2.0 * hi * std::abs(g.Binv[0][0]) > kRankOneDirect)
      return rank_one_sum(std::abs(g.B[0][0]), c, include_zero);
    if (hi > 1e12) throw BudgetExceeded("truncation radius diverges");
  }
  for (int it = 0; it < 40 && hi - lo > 1e-3 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_bound_at(L, g, c, mid) > tail_bound ? lo : hi) = mid;
  }
  if (rank_one && 2.0 * hi * std::abs(g.Binv[0][0]) + 3.0 > kRankOneDirect)
    return rank_one_sum(std::abs(g.B[0][0]), c, include_zero);
  return lattice_sum_at_radius(L, t, c, hi, include_zero);
}

double IdeleQ::norm() const {
  double n = y_inf;
  for (const auto& [p, v] : valuations) n *= std::pow(double(p), -v);
  return n;
}

AdelicSumResult adelic_sum_Q(const IdeleQ& y, long long level, double c1, double c2, double tail_bound) {
  if (level < 1) throw DomainError("level must be a positive integer");
  if (!(y.y_inf > 0)) throw DomainError("archimedean component must be positive");
  const double c = c2 - c1;
  if (!(c > 1.0)) throw NonConvergent("need c2 - c1 > 1");
  // alpha runs over (1/M) Z - 0 with M = level prod p^{v_p(y_p)}
  BigRational M(level);
  for (const auto& [p, v] : y.valuations) {
    if (p < 2) throw DomainError("bad prime in idele");
    const BigRational pp(p);
    for (int k = 0; k < std::abs(v); ++k) M = v > 0 ? BigRational(M * pp) : BigRational(M / pp);
  }
  QuadLattice L;
  L.field = QuadField{1};
  L.basis = {{1 / M, 0}};
  L.norm = level;
  const double yn = y.norm();
  const double pre = std::pow(yn, -c1);
  const auto s = lattice_sum(L, y.y_inf, c, tail_bound / pre);
  AdelicSumResult out;
  out.value = pre * s.value;
  out.error = pre * s.error;
  const double n = double(level);
  out.bound_classical = std::pow(yn, -c1 - 1.0) * n * std::pow(1.0 + yn * n * n, c);
  out.bound_growth = std::pow(yn, -c1 - c) * std::pow(n, 3.0 * c);
  return out;
}

}  // namespace regint
