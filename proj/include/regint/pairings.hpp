#pragma once

#include <string>
#include <utility>
#include <vector>

#include "regint/deform.hpp"
#include "regint/regularize.hpp"

namespace regint {

enum class PairingMode { unitary_axis, singular_point };

// Unitary: E^{(n1)}(0) E^{(n2)}(0). Singular: E^{reg,(n1)}(1/2) E^{reg,(n2)}(1/2).
struct PairingRequest {
  EisensteinSpec left;
  EisensteinSpec right;
  PairingMode mode = PairingMode::singular_point;
};

void validate(const PairingRequest& req);
PairingRequest unitary_request(int n1, int n2);
PairingRequest singular_request(int n1, int n2);

struct FormulaTerm {
  std::string monomial;  // e.g. "L^-1*l0*m1^2"
  Rational weight;
};

// Closed form of a regularized pairing in the lambda symbols (see Poly).
struct PairingFormula {
  std::string label;
  Poly expression;
  double max_residual = 0.0;  // largest negative-order magnitude of the deformation

  std::vector<FormulaTerm> terms() const;
  double value() const { return expression.evaluate(); }
};

inline constexpr std::pair<int, int> kDefaultRates{1, 3};
inline constexpr int kMaxPairingOrder = 4;  // n1 + n2

PairingFormula rip_unitary(int n1, int n2, std::pair<int, int> rates = kDefaultRates);
PairingFormula rip_singular(int n1, int n2, std::pair<int, int> rates = kDefaultRates);
PairingFormula pairing_formula(const PairingRequest& req, std::pair<int, int> rates = kDefaultRates);

// Regression fixture: the arrangement {4 l2/L, 4 l2 m1/L, l0 m1^2/L, -m3/3,
// -m2 m1} of the (1,1) unitary coefficients. It does not match the numeric
// integral; rip_unitary(1, 1) does.
PairingFormula unitary_11_fixture();

struct PairingComparison {
  double formula = 0.0;
  cplx residue_oracle;      // regularized_integral of the pointwise product
  cplx subtraction_oracle;  // subtraction method on the same sample
  double max_delta = 0.0;
};
PairingComparison compare_with_oracles(const PairingRequest& req, RegularizeOptions opts = {});

// Numeric deformation values for fixed generic parameters.
cplx simple_product_unitary(cplx s, int n2 = 1);               // int E(s) E^{(n2)}(0)
cplx simple_product_singular(int n1, int n2, cplx s);          // int E^{reg,(n1)}(1/2+s) E^{reg,(n2)}(1/2)
cplx single_regularized(int n, cplx s);                        // int E^{reg,(n)}(1/2+s)

// ---- Mellin transform of the cusp profile ---------------------------------

enum class RMethod { truncation, direct };

// Largest Re alpha over the declared exponents.
double exponent_bound(const ExponentSet& e);

// R(s, phi). The direct method integrates phi E(s) over D and needs
// Theta < Re s < -Theta.
cplx R_phi_f(cplx s, const AutomorphicSample& phi, RMethod method = RMethod::truncation,
             RegularizeOptions opts = {});

// ---- triple products --------------------------------------------------------

struct TripleToDoubleResult {
  cplx hol_derivative;  // n! times the order-n Laurent coefficient of R at 1/2
  cplx integral_phi;    // regularized integral of phi
  cplx exponent_sum;    // sum over alpha_j = -1/2 of c_j l_{n_j + n} / L
  cplx pairing;         // regularized integral of phi E^{reg,(n)}(1/2)
};

// phi must have Re alpha <= -1/2 for every exponent, with equality only at
// alpha = -1/2.
TripleToDoubleResult triple_to_double(int n, const AutomorphicSample& phi, RegularizeOptions opts = {});

// E*(0) = Lambda(1+2s) E(s) at s = 0, from a contour around the removable point.
cplx completed_E_at_zero(UpperHalfPoint z);
// Res_{s=1} Lambda(s) by a Laurent contour.
double completed_lambda_residue();

// E*(0)^2 minus its growth at the cusp: F^2/4 - (E^{reg,(2)} + m1 E^{reg,(1)}
// + m1^2/4 E^reg) at 1/2, with F = E^{(1)}(0).
AutomorphicSample unitary_square_residual(double tol = 1e-12);

struct TripleProductResult {
  cplx value;
  cplx triple_part;       // int^reg phi E^{reg,(n)}(1/2) via triple_to_double
  double pairing_part;    // singular pairings of the subtracted growth
  TripleToDoubleResult detail;
};

// int^reg E*(0)^2 E^{reg,(n)}(1/2) for n <= 2.
TripleProductResult triple_product(int n, RegularizeOptions opts = {});
// The same integral straight from the pointwise product.
cplx triple_product_direct(int n, RegularizeOptions opts = {});

}  // namespace regint
