#include <cmath>
#include <memory>

#include "regint/eisenstein.hpp"
#include "regint/errors.hpp"
#include "regint/laurent.hpp"

namespace regint {
namespace {

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

bool same_spec(const EisensteinSpec& a, const EisensteinSpec& b) {
  return a.s0 == b.s0 && a.deriv_order == b.deriv_order && a.regularized == b.regularized;
}

std::string describe(const EisensteinSpec& s) {
  std::string out = s.regularized ? "Ereg" : "E";
  if (s.deriv_order > 0) out += "^(" + std::to_string(s.deriv_order) + ")";
  out += "(" + std::to_string(s.s0.real());
  if (s.s0.imag() != 0.0) out += (s.s0.imag() > 0 ? "+" : "") + std::to_string(s.s0.imag()) + "i";
  return out + ")";
}

}  // namespace

ExponentSet exponent_set_of(const EisensteinSpec& spec) {
  validate(spec);
  const int n = spec.deriv_order;
  ExponentSet out;
  if (!spec.regularized) {
    const cplx s = spec.s0;
    out.add({1.0, s, n});
    for (int k = 0; k <= n; ++k) {
      const cplx lt = (n - k == 0) ? lambda_tilde(s) : lambda_tilde_deriv(n - k, s);
      out.add({binom(n, k) * sign_pow(k) * lt, -s, k});
    }
    return out;
  }
  const cplx u = spec.s0 - 0.5;
  out.add({1.0, 0.5 + u, n});
  if (u != cplx(0.0)) {
    for (int k = 0; k <= n; ++k)
      out.add({binom(n, k) * sign_pow(k) * lambda_F_deriv(n - k, u), -0.5 - u, k});
    out.add({-lambda_F_deriv(n, u), -0.5, 0});
    return out;
  }
  // limit u -> 0 of d^n/du^n [lambda_F(u) (t^{-u} - 1)]
  const auto& data = lambda_laurent_data();
  out.add({data.residue * sign_pow(n + 1) / (n + 1), -0.5, n + 1});
  for (int i = 1; i <= n; ++i) out.add({binom(n, i) * data.ell[std::size_t(n - i)] * sign_pow(i), -0.5, i});
  return out;
}

ExponentSet exponent_set_of(std::span<const EisensteinSpec> specs) {
  ExponentSet out = ExponentSet::constant(1.0);
  for (const auto& s : specs) out = out * exponent_set_of(s);
  return out;
}

cplx AutomorphicSample::operator()(UpperHalfPoint z) const {
  cplx v;
  batch(std::span(&z, 1), std::span(&v, 1));
  return v;
}

AutomorphicSample sample_constant(cplx c) {
  AutomorphicSample s;
  s.batch = [c](std::span<const UpperHalfPoint> pts, std::span<cplx> out) {
    std::fill_n(out.begin(), pts.size(), c);
  };
  s.exponents = ExponentSet::constant(c);
  s.decay_cert = kRapidDecay;
  s.label = "const";
  return s;
}

AutomorphicSample sample_combination(std::vector<SampleTerm> terms, cplx constant, double tol) {
  std::vector<EisensteinSpec> distinct;
  std::vector<std::vector<std::size_t>> slots;  // per term, index into distinct
  for (const auto& t : terms) {
    auto& idx = slots.emplace_back();
    for (const auto& f : t.factors) {
      std::size_t k = 0;
      while (k < distinct.size() && !same_spec(distinct[k], f)) ++k;
      if (k == distinct.size()) distinct.push_back(f);
      idx.push_back(k);
    }
  }
  AutomorphicSample s;
  s.exponents = ExponentSet::constant(constant);
  s.label = "";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    s.exponents = s.exponents + terms[i].coeff * exponent_set_of(terms[i].factors);
    if (!s.label.empty()) s.label += " + ";
    s.label += "(" + std::to_string(terms[i].coeff.real()) + ")";
    for (const auto& f : terms[i].factors) s.label += "*" + describe(f);
  }
  if (constant != cplx(0.0) || terms.empty()) s.label += (s.label.empty() ? "" : " + ") + std::to_string(constant.real());
  s.decay_cert = kRapidDecay;
  auto kernel = std::make_shared<const EisensteinKernel>(EisensteinKernel::from_specs(distinct, tol));
  const std::size_t K = distinct.size();
  s.batch = [kernel, K, slots, terms = std::move(terms), constant](std::span<const UpperHalfPoint> pts,
                                                                   std::span<cplx> out) {
    std::vector<cplx> buf(pts.size() * K);
    if (K > 0) kernel->evaluate(pts, buf);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cplx acc = constant;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        cplx p = terms[t].coeff;
        for (std::size_t k : slots[t]) p *= buf[i * K + k];
        acc += p;
      }
      out[i] = acc;
    }
  };
  return s;
}

AutomorphicSample sample_product(std::vector<EisensteinSpec> specs, double tol) {
  return sample_combination({SampleTerm{1.0, std::move(specs)}}, 0.0, tol);
}

AutomorphicSample sample_scaled_sum(cplx a, const AutomorphicSample& f, cplx b, const AutomorphicSample& g) {
  AutomorphicSample s;
  s.exponents = a * f.exponents + b * g.exponents;
  s.decay_cert = std::min(f.decay_cert, g.decay_cert);
  s.label = "(" + f.label + ")+(" + g.label + ")";
  s.batch = [a, b, fb = f.batch, gb = g.batch](std::span<const UpperHalfPoint> pts, std::span<cplx> out) {
    std::vector<cplx> tmp(pts.size());
    fb(pts, out);
    gb(pts, tmp);
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = a * out[i] + b * tmp[i];
  };
  return s;
}

AutomorphicSample sample_times(const AutomorphicSample& f, const AutomorphicSample& g) {
  AutomorphicSample s;
  s.exponents = f.exponents * g.exponents;
  s.decay_cert = std::min(f.decay_cert, g.decay_cert);
  s.label = "(" + f.label + ")*(" + g.label + ")";
  s.batch = [fb = f.batch, gb = g.batch](std::span<const UpperHalfPoint> pts, std::span<cplx> out) {
    std::vector<cplx> tmp(pts.size());
    fb(pts, out);
    gb(pts, tmp);
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] *= tmp[i];
  };
  return s;
}

cplx hecke_eigenvalue(long p, cplx s) {
  const double q = double(p);
  return (std::pow(q, 0.5 + s) + std::pow(q, -0.5 - s)) / (std::sqrt(q) + 1.0 / std::sqrt(q));
}

AutomorphicSample hecke_T(long p, const AutomorphicSample& phi) {
  if (p < 2) throw DomainError("hecke_T needs a prime p");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("hecke_T needs a prime p");
  const double q = double(p), lq = std::log(q);
  AutomorphicSample s;
  // constant term of T(p) phi is [a(p y) + p a(y/p)] / (p + 1)
  for (const auto& term : phi.exponents.terms()) {
    const cplx beta = 0.5 + term.alpha;
    for (int m = 0; m <= term.n; ++m) {
      const int r = term.n - m;
      const cplx factor = std::exp(beta * lq) * std::pow(lq, r) + q * std::exp(-beta * lq) * std::pow(-lq, r);
      s.exponents.add({term.c * binom(term.n, m) * factor / (q + 1.0), term.alpha, m});
    }
  }
  s.decay_cert = phi.decay_cert;
  s.label = "T(" + std::to_string(p) + ")" + phi.label;
  s.batch = [p, q, inner = phi.batch](std::span<const UpperHalfPoint> pts, std::span<cplx> out) {
    const std::size_t m = std::size_t(p) + 1;
    std::vector<UpperHalfPoint> moved;
    moved.reserve(pts.size() * m);
    for (const auto& z : pts) {
      moved.push_back({q * z.x, q * z.y});
      for (long b = 0; b < p; ++b) moved.push_back({(z.x + double(b)) / q, z.y / q});
    }
    std::vector<cplx> vals(moved.size());
    inner(moved, vals);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += vals[i * m + k];
      out[i] = acc / (q + 1.0);
    }
  };
  return s;
}

cplx constant_term(const AutomorphicSample& phi, double t, int quad_nodes) {
  if (!(t > 0.0)) throw DomainError("constant_term needs t > 0");
  if (quad_nodes < 1) throw DomainError("constant_term needs quad_nodes >= 1");
  std::vector<UpperHalfPoint> pts(static_cast<std::size_t>(quad_nodes));
  for (int j = 0; j < quad_nodes; ++j) pts[std::size_t(j)] = {(j + 0.5) / quad_nodes - 0.5, t};
  std::vector<cplx> vals(pts.size());
  phi.batch(pts, vals);
  cplx sum = 0.0;
  for (cplx v : vals) sum += v;
  return sum / double(quad_nodes);
}

}  // namespace regint
