#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regint/exponents.hpp"
#include "regint/special_fn.hpp"

namespace regint {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;
};

// Integer matrix [[a, b], [c, d]] acting by Moebius transformation.
struct SL2Z {
  long long a = 1, b = 0, c = 0, d = 1;
  UpperHalfPoint act(UpperHalfPoint z) const;
  friend SL2Z operator*(const SL2Z& l, const SL2Z& r);
};

inline constexpr double kSqrt3Over2 = 0.86602540378443864676;

// Returns (g z, g) with g z in the closed standard fundamental domain.
std::pair<UpperHalfPoint, SL2Z> reduce_to_fundamental_domain(UpperHalfPoint z);
bool in_fundamental_domain(UpperHalfPoint z, double slack = 1e-12);
double height(UpperHalfPoint z);

// E^{(n)}(s0) when !regularized, E^{reg,(n)}(s0) otherwise. s0 is the
// spectral parameter; the classical exponent is w = 1/2 + s0.
struct EisensteinSpec {
  cplx s0;
  int deriv_order = 0;
  bool regularized = false;
};

void validate(const EisensteinSpec& spec);

// Finite linear combinations  shift_k + sum_j W[k][j] E(z, 1/2 + s_j) for a
// shared list of nodes s_j, evaluated for all k at once. Derivatives and the
// regularized series are realized as Cauchy-circle combinations of this form.
class EisensteinKernel {
 public:
  EisensteinKernel(std::vector<cplx> nodes, std::vector<std::vector<cplx>> weights,
                   std::vector<cplx> shifts, double tol = 1e-12);

  static EisensteinKernel from_specs(std::span<const EisensteinSpec> specs, double tol = 1e-12);

  std::size_t outputs() const { return shifts_.size(); }
  const std::vector<cplx>& nodes() const { return nodes_; }

  // out[i * outputs() + k]. Points need not be reduced. When truncate_T is
  // finite the constant term of each E is dropped at reduced heights > T
  // (the shift is kept).
  void evaluate(std::span<const UpperHalfPoint> pts, std::span<cplx> out,
                double truncate_T = std::numeric_limits<double>::infinity()) const;

  // Same, for points already reduced with a common y (no reduction applied).
  void evaluate_row(double y, std::span<const double> xs, std::span<cplx> out, bool drop_constant) const;

 private:
  int fourier_terms(double y) const;

  std::vector<cplx> nodes_;
  std::vector<std::vector<cplx>> weights_;  // [k][j]
  std::vector<cplx> shifts_;
  double tol_;
  double w_abs_max_ = 0.0;
  int n_max_ = 0;
  std::vector<cplx> scatter_;  // c(w_j)
  std::vector<cplx> coeff_;    // 4 n^{w-1/2} sigma_{1-2w}(n) / xi(2w), [j * n_max + n - 1]
  std::unique_ptr<BesselKBatch> bessel_;
};

cplx eval_E(UpperHalfPoint z, cplx s, double tol = 1e-12);
cplx eval_E_deriv(UpperHalfPoint z, cplx s0, int n, double tol = 1e-12);
cplx eval_E_reg(UpperHalfPoint z, cplx s, int n, double tol = 1e-12);
cplx eval_spec(UpperHalfPoint z, const EisensteinSpec& spec, double tol = 1e-12);

// Constant-term exponents of a single spec and of a product of specs.
ExponentSet exponent_set_of(const EisensteinSpec& spec);
ExponentSet exponent_set_of(std::span<const EisensteinSpec> specs);

using BatchEvaluator = std::function<void(std::span<const UpperHalfPoint>, std::span<cplx>)>;

// An SL2(Z)-invariant function with its declared constant-term exponents.
// decay_cert is the N0 in |phi - phi*| <= C y^{-N0} for y >= 2; rapid decay
// is recorded as a large finite value.
struct AutomorphicSample {
  BatchEvaluator batch;
  ExponentSet exponents;
  double decay_cert = 1e3;
  std::string label;

  cplx operator()(UpperHalfPoint z) const;
};

inline constexpr double kRapidDecay = 1e3;

AutomorphicSample sample_constant(cplx c);
// Product of the series named by specs.
AutomorphicSample sample_product(std::vector<EisensteinSpec> specs, double tol = 1e-12);
// Sum of coefficient * product-of-specs terms plus a constant; all products
// share one kernel.
struct SampleTerm {
  cplx coeff;
  std::vector<EisensteinSpec> factors;
};
AutomorphicSample sample_combination(std::vector<SampleTerm> terms, cplx constant = 0.0, double tol = 1e-12);
AutomorphicSample sample_scaled_sum(cplx a, const AutomorphicSample& f, cplx b, const AutomorphicSample& g);
AutomorphicSample sample_times(const AutomorphicSample& f, const AutomorphicSample& g);

// (phi(p z) + sum_b phi((z + b)/p)) / (p + 1).
AutomorphicSample hecke_T(long p, const AutomorphicSample& phi);
// Hecke eigenvalue of E(1/2 + s).
cplx hecke_eigenvalue(long p, cplx s);

// int_0^1 phi(x + i t) dx by the periodic trapezoid rule.
cplx constant_term(const AutomorphicSample& phi, double t, int quad_nodes = 64);

}  // namespace regint
