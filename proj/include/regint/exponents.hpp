#pragma once

#include <vector>

#include "regint/special_fn.hpp"

namespace regint {

// One term c * t^{1/2 + alpha} * log^n t of a constant-term expansion. The
// stored c is the full coefficient of that monomial.
struct ExponentTerm {
  cplx c;
  cplx alpha;
  int n = 0;
};

// Finite sum of ExponentTerms with distinct (alpha, n). Exponents closer than
// kAlphaMergeTol are treated as equal.
class ExponentSet {
 public:
  static constexpr double kAlphaMergeTol = 1e-12;
  static constexpr double kPruneTol = 1e-14;

  ExponentSet() = default;
  explicit ExponentSet(std::vector<ExponentTerm> terms);

  static ExponentSet constant(cplx c);  // c * t^0 = c * t^{1/2 - 1/2}

  const std::vector<ExponentTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const ExponentTerm& term);
  // Drops the (alpha, n) term if present.
  void remove(cplx alpha, int n);

  // f(t) = sum of the terms.
  cplx evaluate(double t) const;

  friend ExponentSet operator+(const ExponentSet& a, const ExponentSet& b);
  friend ExponentSet operator*(const ExponentSet& a, const ExponentSet& b);
  friend ExponentSet operator*(cplx k, const ExponentSet& a);

 private:
  void prune();
  std::vector<ExponentTerm> terms_;
};

}  // namespace regint
