#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "regint/errors.hpp"
#include "regint/special_fn.hpp"

namespace regint {

// Finite Laurent expansion sum_{k=lo}^{hi} c_k (s - center)^k + O((s-center)^{hi+1}).
// The coefficient ring is a template parameter so the same bookkeeping serves
// numeric series and the symbolic pairing engine.
template <class T>
class Laurent {
 public:
  Laurent() = default;
  Laurent(cplx center, int min_order, std::vector<T> coeffs)
      : center_(center), min_order_(min_order), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw OrderRangeError("empty coefficient list");
  }

  // Constant c known through max_order.
  static Laurent constant(cplx center, const T& c, int max_order) {
    std::vector<T> v(std::size_t(std::max(max_order, 0) + 1), T{});
    v[0] = c;
    return Laurent(center, 0, std::move(v));
  }
  // (s - center)^k alone, known through max_order >= k.
  static Laurent monomial(cplx center, int k, const T& c, int max_order) {
    std::vector<T> v(std::size_t(max_order - k + 1), T{});
    v[0] = c;
    return Laurent(center, k, std::move(v));
  }

  cplx center() const { return center_; }
  int min_order() const { return min_order_; }
  int max_order() const { return min_order_ + int(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  // Coefficient of (s-center)^k; zero below min_order.
  T operator[](int k) const {
    if (k > max_order()) throw OrderRangeError("order " + std::to_string(k) + " beyond working order");
    if (k < min_order_) return T{};
    return coeffs_[std::size_t(k - min_order_)];
  }

  // Drops leading coefficients satisfying the predicate.
  template <class IsZero>
  Laurent trimmed(IsZero is_zero) const {
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && is_zero(coeffs_[first])) ++first;
    return Laurent(center_, min_order_ + int(first), {coeffs_.begin() + first, coeffs_.end()});
  }

  Laurent truncated(int max_order) const {
    const int hi = std::min(max_order, this->max_order());
    if (hi < min_order_) return Laurent(center_, hi, {T{}});
    return Laurent(center_, min_order_, {coeffs_.begin(), coeffs_.begin() + (hi - min_order_ + 1)});
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    check_center(a, b);
    const int lo = std::min(a.min_order_, b.min_order_);
    const int hi = std::min(a.max_order(), b.max_order());
    if (hi < lo) return Laurent(a.center_, hi, {T{}});
    std::vector<T> v(std::size_t(hi - lo + 1), T{});
    for (int k = lo; k <= hi; ++k) v[std::size_t(k - lo)] = a[k] + b[k];
    return Laurent(a.center_, lo, std::move(v));
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    check_center(a, b);
    const int lo = a.min_order_ + b.min_order_;
    const int hi = std::min(a.max_order() + b.min_order_, b.max_order() + a.min_order_);
    std::vector<T> v(std::size_t(hi - lo + 1), T{});
    for (int i = a.min_order_; i <= a.max_order(); ++i)
      for (int j = b.min_order_; j <= b.max_order() && i + j <= hi; ++j)
        v[std::size_t(i + j - lo)] += a[i] * b[j];
    return Laurent(a.center_, lo, std::move(v));
  }

  friend Laurent operator*(const Laurent& a, const T& c) {
    Laurent r = a;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
  }
  friend Laurent operator*(const T& c, const Laurent& a) { return a * c; }

 private:
  static void check_center(const Laurent& a, const Laurent& b) {
    if (a.center_ != b.center_) throw CenterMismatch("series have different centers");
  }

  cplx center_{0.0};
  int min_order_ = 0;
  std::vector<T> coeffs_{T{}};
};

using TruncatedLaurent = Laurent<cplx>;

enum class SeriesOp { add, mul, div };

// Magnitude threshold under which numeric coefficients count as exact zeros.
inline constexpr double kSeriesZeroTol = 1e-11;

TruncatedLaurent series_div(const TruncatedLaurent& a, const TruncatedLaurent& b);
TruncatedLaurent series_arith(const TruncatedLaurent& a, const TruncatedLaurent& b, SeriesOp op);

cplx residue(const TruncatedLaurent& a);
cplx holomorphic_part_value(const TruncatedLaurent& a);

using AnalyticFn = std::function<cplx(cplx)>;

// Contour nodes center + radius e^{i(theta0 + 2 pi j / count)}.
std::vector<cplx> contour_nodes(cplx center, double radius, int count);

// Coefficients for orders min_order .. min_order + n_terms - 1 from samples of f
// on contour_nodes(center, radius, samples.size()).
TruncatedLaurent laurent_from_samples(std::span<const cplx> samples, cplx center, double radius,
                                      int min_order, int n_terms);

// Numerical Laurent coefficients by the trapezoid rule on a circle. The rule is
// run with `nodes` and 2*`nodes` points; disagreement beyond 1e-8 (relative to
// the sampled magnitude) raises ContourError.
TruncatedLaurent laurent_of(const AnalyticFn& f, cplx center, int min_order, int n_terms,
                            double radius, int nodes = 256);

}  // namespace regint

namespace regint {

// Laurent data of lambda_F at 0 and Taylor data of lambda_tilde at 0, computed
// once from contour integrals. ell[k] = lambda_F^{(k)}(0) for the holomorphic
// part, m[k] = lambda_tilde^{(k)}(0), residue = lambda_F^{(-1)}(0).
struct LambdaLaurentData {
  double residue = 0.0;
  std::vector<double> ell;
  std::vector<double> m;
};
const LambdaLaurentData& lambda_laurent_data();

// k-th derivatives, analytic away from the listed poles (0 for lambda_F,
// +-1/2 for lambda_tilde).
cplx lambda_F_deriv(int k, cplx u);
cplx lambda_tilde_deriv(int k, cplx s);

}  // namespace regint
