#include "regint/poly.hpp"

#include <cmath>
#include <mutex>

#include "regint/errors.hpp"

namespace regint {
namespace {

constexpr int kEllBase = 1000;
constexpr int kMBase = 2000;

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Poly::Poly(long long c) {
  if (c != 0) terms_[{}] = Rational(c);
}

Poly::Poly(Rational c) {
  if (c != 0) terms_[{}] = std::move(c);
}

Poly Poly::L(int power) {
  Poly p;
  Monomial mono;
  if (power != 0) mono[0] = power;
  p.terms_[mono] = 1;
  return p;
}

Poly Poly::ell(int k) {
  if (k < 0) throw OrderRangeError("negative ell index");
  Poly p;
  p.terms_[{{kEllBase + k, 1}}] = 1;
  return p;
}

Poly Poly::m(int k) {
  if (k < 0) throw OrderRangeError("negative m index");
  if (k == 0) return Poly(-1);
  if (k % 2 == 1) {
    Poly p;
    p.terms_[{{kMBase + k, 1}}] = 1;
    return p;
  }
  // [s^k] of lambda_tilde(s) lambda_tilde(-s) vanishes; with m_0 = -1 this
  // solves for m_k in terms of lower orders
  static std::mutex mu;
  static std::map<int, Poly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  Poly acc;
  for (int j = 1; j < k; ++j) {
    Rational w = Rational(j % 2 == 0 ? 1 : -1) / (factorial(j) * factorial(k - j));
    acc += Poly(w) * m(j) * m(k - j);
  }
  Poly result = Poly(factorial(k) / 2) * acc;
  std::lock_guard lock(mu);
  cache.emplace(k, result);
  return result;
}

void Poly::add_term(const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [mono, c] : r.terms_) c = -c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Poly::Monomial mono = ma;
      for (const auto& [sym, e] : mb) {
        const int total = (mono[sym] += e);
        if (total == 0) mono.erase(sym);
      }
      r.add_term(mono, ca * cb);
    }
  return r;
}

double Poly::evaluate() const { return evaluate(lambda_laurent_data()); }

double Poly::evaluate(const LambdaLaurentData& d) const {
  double total = 0.0;
  for (const auto& [mono, c] : terms_) {
    double v = static_cast<double>(c);
    for (const auto& [sym, e] : mono) {
      double base;
      if (sym == 0) {
        base = d.residue;
      } else if (sym < kMBase) {
        const auto k = std::size_t(sym - kEllBase);
        if (k >= d.ell.size()) throw UnsupportedOrder("ell_" + std::to_string(k) + " beyond the lambda table");
        base = d.ell[k];
      } else {
        const auto k = std::size_t(sym - kMBase);
        if (k >= d.m.size()) throw UnsupportedOrder("m_" + std::to_string(k) + " beyond the lambda table");
        base = d.m[k];
      }
      v *= std::pow(base, e);
    }
    total += v;
  }
  return total;
}

std::string Poly::monomial_name(const Monomial& mono) {
  if (mono.empty()) return "1";
  std::string out;
  for (const auto& [sym, e] : mono) {
    if (!out.empty()) out += "*";
    if (sym == 0)
      out += "L";
    else if (sym < kMBase)
      out += "l" + std::to_string(sym - kEllBase);
    else
      out += "m" + std::to_string(sym - kMBase);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mono, c] : terms_) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mono.empty()) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += monomial_name(mono);
    }
  }
  return out;
}

}  // namespace regint
