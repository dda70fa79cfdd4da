#pragma once

#include <array>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regint/special_fn.hpp"

namespace regint {

using Rational = boost::multiprecision::cpp_rational;

// ---- Schwartz functions on Q_p^d -------------------------------------------

// coeff * 1_{center + p^level Z_p^d}
struct BallTerm {
  std::vector<Rational> center;
  int level = 0;
  Rational coeff = 1;
};

struct PadicIndices {
  int D = 0;      // support in (p^D)^d
  int delta = 0;  // invariant under (p^delta)^d
  int m = 0;      // invariant under GL_d(Z_p) elements = 1 mod p^m
  friend bool operator==(const PadicIndices&, const PadicIndices&) = default;
};

// A locally constant compactly supported function, stored by its values on
// the cells p^{lo_i} r_i + p^{hi_i} Z_p of a box. Values are exact: each is
// scale * sum_k c_k zeta^k with zeta = exp(2 pi i / p^N) and integer c_k.
class PadicSchwartz {
 public:
  static PadicSchwartz from_balls(int p, int d, const std::vector<BallTerm>& terms);
  // Text lines "p d coeff_re coeff_im center... level"; the imaginary part
  // must vanish (coefficients are kept exact).
  static PadicSchwartz parse(const std::string& text);

  int p() const { return p_; }
  int dim() const { return d_; }
  const std::vector<int>& lo() const { return lo_; }
  const std::vector<int>& hi() const { return hi_; }
  std::size_t cells() const { return values_.size(); }

  bool is_zero() const;
  cplx operator()(std::span<const Rational> x) const;
  cplx cell_value(std::size_t cell) const;

  PadicIndices indices() const;

  // Fourier transform in the listed coordinates; psi has conductor c
  // (trivial on p^{-c} Z_p).
  PadicSchwartz fourier(int conductor = 0) const;
  PadicSchwartz partial_fourier(std::span<const int> coords, int conductor = 0) const;
  PadicSchwartz reflect() const;  // x -> -x
  // x -> x k for k in GL_d(Z_p) given by integer entries (row-major).
  PadicSchwartz translate(std::span<const long long> kappa) const;
  PadicSchwartz scaled(const Rational& c) const;

  // || |x^sigma| Phi ||_l, exact per cell; l = infinity allowed.
  double seminorm(double l, std::span<const double> sigma) const;
  double norm(double l) const;

  friend bool exactly_equal(const PadicSchwartz& a, const PadicSchwartz& b);

 private:
  using Vec = std::vector<long long>;  // Z[C_{p^N}], empty = 0

  PadicSchwartz rewindow(const std::vector<int>& lo, const std::vector<int>& hi, int N) const;
  std::size_t cell_index(std::span<const long long> r) const;
  std::vector<long long> cell_coords(std::size_t idx) const;
  long long size_of(int i) const;
  bool vec_zero(const Vec& v) const;
  bool invariant_at(int delta) const;
  bool invariant_under(std::span<const long long> kappa, long long mod) const;
  int multiplicative_index(int cap) const;

  int p_ = 2, d_ = 1, N_ = 0;
  std::vector<int> lo_, hi_;
  Rational scale_ = 1;
  std::vector<Vec> values_;
};

long long ipow(long long b, int e);
int padic_valuation(const Rational& x, int p);

struct RandomSchwartzOptions {
  int max_terms = 4;
  int min_level = -1;
  int max_level = 2;
  int max_span = 3;  // cap on hi - lo per coordinate
};

PadicSchwartz random_schwartz(int p, int d, std::mt19937_64& rng, const RandomSchwartzOptions& opts = {});
// Random element of GL_d(Z_p) with entries in [0, p^k).
std::vector<long long> random_gl(int p, int d, int k, std::mt19937_64& rng);

// ---- unramified Whittaker values --------------------------------------------

struct LocalCharData {
  double q = 2;
  cplx s = 0.0;
  cplx alpha = 1.0;
  cplx beta = 1.0;
};

// alpha = q^{-s}, beta = q^{s}.
LocalCharData unramified_data(double q, cplx s);

// q^{-n/2} (alpha^{n+1} - beta^{n+1}) / (alpha - beta) for n >= 0, else 0.
cplx whittaker_unramified(int n, const LocalCharData& data);
// Right-hand side of the bound at |y| = q^{-n}.
double whittaker_bound(int n, const LocalCharData& data, double eps);
bool whittaker_bound_check(int n, const LocalCharData& data, double eps);

// ---- Iwahori-level scalars ----------------------------------------------------

struct IwahoriScalars {
  cplx mu1, c0, c1;
};
IwahoriScalars iwahori_scalars(double q, cplx s);

// d/ds c0 at s, by a Laurent contour.
cplx iwahori_c0_derivative(double q, cplx s);

// Iwahori-fixed vectors of the induced representation, by their values at
// the double coset representatives 1 and w.
struct IwahoriVector {
  cplx at_1 = 0.0, at_w = 0.0;
};
IwahoriVector iwahori_e0();
IwahoriVector iwahori_e1(double q);  // unit vector orthogonal to e0, K_0-invariant
// Right translation by diag(p^{-1}, 1) on the representation with parameter s.
IwahoriVector translate_a_inv(double q, cplx s, IwahoriVector v);

// Local intertwining operator on span(e0, e1) at s -> -s. Columns are the
// images of e0 and e1 in the basis (e0, e1). Computed from the defining
// integrals over shells for Re s > 0 (plus the exact geometric tail); the
// same rational expressions continue it elsewhere.
using Matrix2 = std::array<std::array<cplx, 2>, 2>;
Matrix2 intertwine_iwahori(double q, cplx s, int shells = 64);
// Closed forms: the spherical local factor and the e1 eigenvalue.
cplx iwahori_spherical_factor(double q, cplx s);
cplx iwahori_e1_factor(double q, cplx s);

}  // namespace regint
