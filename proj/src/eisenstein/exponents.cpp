#include "regint/exponents.hpp"

#include <cmath>

namespace regint {

ExponentSet::ExponentSet(std::vector<ExponentTerm> terms) {
  for (const auto& t : terms) add(t);
}

ExponentSet ExponentSet::constant(cplx c) { return ExponentSet({{c, -0.5, 0}}); }

void ExponentSet::add(const ExponentTerm& term) {
  if (term.n < 0) throw std::invalid_argument("ExponentTerm with negative log power");
  for (auto& t : terms_) {
    if (t.n == term.n && std::abs(t.alpha - term.alpha) <= kAlphaMergeTol) {
      t.c += term.c;
      prune();
      return;
    }
  }
  terms_.push_back(term);
  prune();
}

void ExponentSet::remove(cplx alpha, int n) {
  std::erase_if(terms_, [&](const ExponentTerm& t) { return t.n == n && std::abs(t.alpha - alpha) <= kAlphaMergeTol; });
}

void ExponentSet::prune() {
  std::erase_if(terms_, [](const ExponentTerm& t) { return std::abs(t.c) <= kPruneTol; });
}

cplx ExponentSet::evaluate(double t) const {
  const double lt = std::log(t);
  cplx sum = 0.0;
  for (const auto& term : terms_) sum += term.c * std::exp((0.5 + term.alpha) * lt) * std::pow(lt, term.n);
  return sum;
}

ExponentSet operator+(const ExponentSet& a, const ExponentSet& b) {
  ExponentSet r = a;
  for (const auto& t : b.terms_) r.add(t);
  return r;
}

ExponentSet operator*(const ExponentSet& a, const ExponentSet& b) {
  ExponentSet r;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.add({x.c * y.c, x.alpha + y.alpha + 0.5, x.n + y.n});
  return r;
}

ExponentSet operator*(cplx k, const ExponentSet& a) {
  ExponentSet r;
  for (const auto& t : a.terms_) r.add({k * t.c, t.alpha, t.n});
  return r;
}

}  // namespace regint
