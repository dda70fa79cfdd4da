#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "regint/errors.hpp"
#include "regint/regularize.hpp"

namespace regint {
namespace {

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
      continue;
    }
    r.x.push_back(a[i]);
    r.w.push_back(w[i]);
    r.x.push_back(-a[i]);
    r.w.push_back(w[i]);
  }
  return r;
}

const Rule& rule(int n) {
  static const Rule r8 = make_rule<8>(), r12 = make_rule<12>(), r16 = make_rule<16>(), r24 = make_rule<24>(),
                    r32 = make_rule<32>(), r48 = make_rule<48>();
  switch (n) {
    case 8: return r8;
    case 12: return r12;
    case 16: return r16;
    case 24: return r24;
    case 32: return r32;
    case 48: return r48;
  }
  throw std::invalid_argument("unsupported Gauss-Legendre order " + std::to_string(n));
}

constexpr int kCapRows = 16;
constexpr int kCapColumns = 24;  // per side

}  // namespace

DomainQuadrature DomainQuadrature::build(double y_top, std::vector<double> breakpoints, int nx, int panel_nodes) {
  if (!(y_top > 1.0)) throw DomainError("quadrature needs y_top > 1");
  if (nx < 4) throw DomainError("quadrature needs nx >= 4");
  DomainQuadrature q;
  // cap below y = 1: substitute r = sqrt(1 - y^2), x in [r, 1/2] on both sides
  const Rule& cr = rule(kCapRows);
  const Rule& cx = rule(kCapColumns);
  for (std::size_t i = 0; i < cr.x.size(); ++i) {
    const double r = 0.25 * (1.0 + cr.x[i]);
    const double y = std::sqrt(1.0 - r * r);
    const double wr = 0.25 * cr.w[i] * (r / y) / (y * y);
    QuadratureRow row{y, {}, {}};
    const double half = 0.5 * (0.5 - r);
    for (std::size_t j = 0; j < cx.x.size(); ++j) {
      const double x = r + half * (1.0 + cx.x[j]);
      row.xs.push_back(x);
      row.weights.push_back(wr * half * cx.w[j]);
      row.xs.push_back(-x);
      row.weights.push_back(wr * half * cx.w[j]);
    }
    q.rows.push_back(std::move(row));
  }
  // rectangle [1, y_top]: log-y panels with ratio at most 2
  std::vector<double> cuts = {1.0, y_top};
  for (double b : breakpoints)
    if (b > 1.0 && b < y_top) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  const Rule& py = rule(panel_nodes);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = std::log(cuts[c]), hi = std::log(cuts[c + 1]);
    const int panels = std::max(1, int(std::ceil((hi - lo) / std::log(2.0) - 1e-12)));
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * width;
      for (std::size_t i = 0; i < py.x.size(); ++i) {
        const double v = a + 0.5 * width * (1.0 + py.x[i]);
        const double y = std::exp(v);
        const double wy = 0.5 * width * py.w[i] / y;
        QuadratureRow row{y, {}, {}};
        for (int j = 0; j < nx; ++j) {
          row.xs.push_back(-0.5 + (j + 0.5) / nx);
          row.weights.push_back(wy / nx);
        }
        q.rows.push_back(std::move(row));
      }
    }
  }
  return q;
}

std::vector<UpperHalfPoint> DomainQuadrature::points() const {
  std::vector<UpperHalfPoint> out;
  out.reserve(size());
  for (const auto& r : rows)
    for (double x : r.xs) out.push_back({x, r.y});
  return out;
}

std::vector<double> DomainQuadrature::weights() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& r : rows) out.insert(out.end(), r.weights.begin(), r.weights.end());
  return out;
}

std::size_t DomainQuadrature::size() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.xs.size();
  return n;
}

double DomainQuadrature::volume() const {
  double v = 0.0;
  for (const auto& r : rows)
    for (double w : r.weights) v += w;
  return v;
}

std::vector<cplx> evaluate_on(const AutomorphicSample& phi, const DomainQuadrature& q) {
  const auto pts = q.points();
  std::vector<cplx> out(pts.size());
  phi.batch(pts, out);
  return out;
}

}  // namespace regint
