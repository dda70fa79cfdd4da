#include <cmath>

#include "regint/eisenstein.hpp"
#include "regint/errors.hpp"

namespace regint {

UpperHalfPoint SL2Z::act(UpperHalfPoint z) const {
  const cplx w(z.x, z.y);
  const cplx r = (double(a) * w + double(b)) / (double(c) * w + double(d));
  const double den = std::norm(double(c) * w + double(d));
  return {r.real(), z.y / den};  // imaginary part from the exact formula
}

SL2Z operator*(const SL2Z& l, const SL2Z& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

std::pair<UpperHalfPoint, SL2Z> reduce_to_fundamental_domain(UpperHalfPoint z) {
  if (!(z.y > 0.0) || !std::isfinite(z.x) || !std::isfinite(z.y))
    throw DomainError("point is not in the upper half plane");
  SL2Z g;
  for (int it = 0; it < 100000; ++it) {
    const double shift = std::floor(z.x + 0.5);
    if (shift != 0.0) {
      z.x -= shift;
      g = SL2Z{1, -static_cast<long long>(shift), 0, 1} * g;
    }
    const double r2 = z.x * z.x + z.y * z.y;
    if (r2 >= 1.0 - 1e-15) return {z, g};
    z = {-z.x / r2, z.y / r2};
    g = SL2Z{0, -1, 1, 0} * g;
  }
  throw ConvergenceError("reduction did not terminate");
}

bool in_fundamental_domain(UpperHalfPoint z, double slack) {
  return std::abs(z.x) <= 0.5 + slack && z.x * z.x + z.y * z.y >= 1.0 - slack;
}

double height(UpperHalfPoint z) { return reduce_to_fundamental_domain(z).first.y; }

}  // namespace regint
