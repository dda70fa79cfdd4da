#pragma once

#include <string>
#include <vector>

#include "regint/eisenstein.hpp"
#include "regint/laurent.hpp"

namespace regint {

// f(t) t^{s - 1/2} integrated over (0, T] against dt/t, in closed form.
cplx h_T(cplx s, const ExponentSet& terms, double T);

// ---- quadrature over the fundamental domain -------------------------------

struct QuadratureRow {
  double y;
  std::vector<double> xs;
  std::vector<double> weights;  // includes dx dy / y^2
};

struct DomainQuadrature {
  std::vector<QuadratureRow> rows;

  // D intersected with {y <= y_top}; extra breakpoints split the log-y panels.
  static DomainQuadrature build(double y_top, std::vector<double> breakpoints, int nx = 32, int panel_nodes = 24);

  std::vector<UpperHalfPoint> points() const;
  std::vector<double> weights() const;
  std::size_t size() const;
  double volume() const;
};

std::vector<cplx> evaluate_on(const AutomorphicSample& phi, const DomainQuadrature& q);

// ---- regularization ---------------------------------------------------------

struct RegularizeOptions {
  double T = 12.0;
  double residue_radius = 0.05;
  int contour_nodes = 64;
  double cusp_margin = 6.0;  // integrate Lambda^T terms up to T + cusp_margin
  int nx = 32;
  int panel_nodes = 24;
};

struct RegularizedIntegralResult {
  cplx principal;
  cplx degenerate;
  cplx total;
  struct Diagnostics {
    int max_pole_order = 0;
    double T = 0.0;
    double residue_radius = 0.0;
    double contour_error = 0.0;  // 64 vs 32 node disagreement of the residue
    double tail_size = 0.0;       // max |a - f| seen on the tail grid
  } diagnostics;
};

// a(t) for each t in the grid.
std::vector<cplx> regularizing_kernel(const AutomorphicSample& phi, std::span<const double> t_grid, int quad_nodes = 64);

// Lambda^T E(z, 1/2 + s).
cplx truncate_E(UpperHalfPoint z, cplx s, double T);

// Holds the quadrature of one sample so that R(s) at many s, and Laurent data
// at 1/2, reuse the sample values.
class Regularizer {
 public:
  explicit Regularizer(AutomorphicSample phi, RegularizeOptions opts = {});

  const AutomorphicSample& sample() const { return phi_; }
  const RegularizeOptions& options() const { return opts_; }

  // int_D phi * Lambda^T E(z, 1/2 + s) for each s.
  std::vector<cplx> truncated_pairing(std::span<const cplx> s) const;
  // int_T^infty (a - f) t^{s - 1/2} dt / t.
  cplx tail(cplx s) const;

  cplx R(cplx s) const;
  cplx R_star(cplx s) const;

  // Laurent expansion of R at 1/2 through order max_order.
  TruncatedLaurent laurent_at_half(int max_order, double* contour_error = nullptr) const;
  double residue_radius() const;

  RegularizedIntegralResult integral() const;

  // max |a(t) - f(t)| relative to max(1, |f|) on the tail grid.
  double tail_misfit() const { return tail_misfit_; }

 private:
  cplx analytic_part(cplx s) const;  // R minus the truncated pairing

  AutomorphicSample phi_;
  RegularizeOptions opts_;
  DomainQuadrature quad_;
  std::vector<UpperHalfPoint> pts_;
  std::vector<cplx> weighted_phi_;  // w_i phi(z_i)
  std::vector<double> tail_t_, tail_w_;
  std::vector<cplx> tail_diff_;
  double tail_misfit_ = 0.0;
};

cplx R_of(cplx s, const AutomorphicSample& phi, double T = 12.0);
RegularizedIntegralResult regularized_integral(const AutomorphicSample& phi, RegularizeOptions opts = {});

// Degenerate contribution: sum of c over terms with alpha = -1/2 and n = 0.
cplx degenerate_part(const ExponentSet& e);

// ---- subtraction oracle -----------------------------------------------------

struct SubtractionPlan {
  std::vector<SampleTerm> pieces;  // each a single Eisenstein factor times a coefficient
  ExponentSet residual;            // exponents of phi minus the pieces
};

SubtractionPlan plan_subtraction(const ExponentSet& e);

// int_T^infty f(t) dt / t^2 for exponents with Re alpha < 1/2.
cplx cusp_tail_integral(const ExponentSet& e, double T);

struct OracleOptions {
  double T = 12.0;
  int nx = 32;
  int panel_nodes = 24;
};

cplx subtraction_oracle(const AutomorphicSample& phi, OracleOptions opts = {});
// Plain integral over D of an integrable sample (constant terms extrapolated
// above T by the declared exponents).
cplx plain_integral(const AutomorphicSample& phi, OracleOptions opts = {});

}  // namespace regint
