#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace regint {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// ---- integer matrices ------------------------------------------------------

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(int r);
  // "a,b;c,d"
  static IntMatrix parse(const std::string& text);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int i, int j) { return a_[std::size_t(i * cols_ + j)]; }
  const BigInt& operator()(int i, int j) const { return a_[std::size_t(i * cols_ + j)]; }

  BigInt det() const;  // Bareiss, exact
  IntMatrix transpose() const;
  // Exact inverse; requires det = +-1.
  IntMatrix inverse_unimodular() const;
  std::string to_string() const;
  std::vector<std::vector<std::string>> to_rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

struct SmithForm {
  IntMatrix U, D, V;  // U A V = D
};
SmithForm smith_normal_form(const IntMatrix& A);

// ---- congruence subgroup cosets ---------------------------------------------

// Gamma_0(N): every entry below the diagonal is 0 mod N. Gamma_0^-(N): every
// entry above the diagonal. Both require det = 1.
bool in_gamma0(const IntMatrix& g, const BigInt& N);
bool in_gamma0_minus(const IntMatrix& g, const BigInt& N);
bool in_gamma(const IntMatrix& g, const BigInt& N);  // = identity mod N
bool is_lower_unipotent(const IntMatrix& m);
bool is_upper_unipotent(const IntMatrix& m);

struct CosetTriple {
  IntMatrix gamma, n_minus, n_plus;
  BigInt N;
  bool minus_order = false;  // true: A = gamma n_plus n_minus
  IntMatrix representative() const;  // n_minus n_plus or n_plus n_minus
};

struct MembershipReport {
  bool gamma_in_group = false;
  bool unipotent_shapes = false;
  bool entries_reduced = false;  // off-diagonal entries in [-N/2, N/2]
  bool product_exact = false;
  bool ok() const { return gamma_in_group && unipotent_shapes && entries_reduced && product_exact; }
};

// A = gamma n_minus n_plus with gamma in Gamma_0(N).
CosetTriple coset_decompose(const IntMatrix& A, const BigInt& N);
// A = gamma n_plus n_minus with gamma in Gamma_0^-(N).
CosetTriple coset_decompose_minus(const IntMatrix& A, const BigInt& N);
MembershipReport check_triple(const CosetTriple& t, const IntMatrix& A);

// Random element of SL_r(Z) as a product of elementary matrices.
IntMatrix random_sl(int r, int steps, std::mt19937_64& rng);

// ---- quadratic fields and lattice sums ---------------------------------------

// Q (d = 1) or Q(sqrt d) for squarefree d != 0, 1.
struct QuadField {
  long long d = 1;
  int degree() const { return d == 1 ? 1 : 2; }
  int r1() const { return d == 1 ? 1 : (d > 0 ? 2 : 0); }
  int r2() const { return d < 0 ? 1 : 0; }
};
void validate(const QuadField& F);

struct FieldElement {
  BigRational x = 0, y = 0;  // x + y sqrt d
};

std::vector<double> embed_sigma(const FieldElement& a, const QuadField& F);
double f_c(const std::vector<double>& v, double c, int r1, int r2);

// Z-basis of a fractional ideal, stored as field elements.
struct QuadLattice {
  QuadField field;
  std::vector<FieldElement> basis;
  BigInt norm = 1;  // |o / J| where the basis spans J^{-1}
};
// J^{-1} for the integral ideal J = m o.
QuadLattice inverse_ideal_lattice(const QuadField& F, long long m);
// Lattice generated by sigma of the basis; columns are sigma(alpha_i).
std::vector<std::vector<double>> embedding_matrix(const QuadLattice& L);

struct LatticeSumResult {
  double value = 0.0;
  double error = 0.0;   // certified bound on the omitted tail
  double radius = 0.0;  // truncation radius in R^r
  long long points = 0;
};

// sum over alpha in J^{-1} (minus 0 unless include_zero) of f_c(t sigma(alpha)).
LatticeSumResult lattice_sum(const QuadLattice& L, double t, double c, double tail_bound,
                             bool include_zero = false);
// The same with an explicit truncation radius; error is the tail bound at it.
LatticeSumResult lattice_sum_at_radius(const QuadLattice& L, double t, double c, double radius,
                                       bool include_zero = false);

// Idele of Q: archimedean absolute value and finite valuations.
struct IdeleQ {
  double y_inf = 1.0;
  std::map<long long, int> valuations;  // p -> v_p(y_p)
  double norm() const;                  // |y|_A
};

struct AdelicSumResult {
  double value = 0.0;
  double error = 0.0;
  double bound_classical = 0.0;  // |y|^{-c1-1} |o/J| (1 + |y| |o/J|^2)^{c2-c1}
  double bound_growth = 0.0;     // |y|^{-c1-(c2-c1)} |o/J|^{3(c2-c1)}
};

// sum over alpha in Q^x of min(|alpha y_inf|^{-c1}, |alpha y_inf|^{-c2})
// prod_p |alpha y_p|_p^{-c1} 1[v_p(alpha y_p) >= -v_p(J)], J = level Z.
AdelicSumResult adelic_sum_Q(const IdeleQ& y, long long level, double c1, double c2, double tail_bound = 1e-10);

}  // namespace regint
