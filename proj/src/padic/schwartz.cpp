#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "regint/errors.hpp"
#include "regint/padic.hpp"

namespace regint {
namespace {

constexpr long long kMaxCells = 1LL << 22;

using boost::multiprecision::cpp_int;

long long mod_pos(const cpp_int& x, long long m) {
  cpp_int r = x % m;
  if (r < 0) r += m;
  return r.convert_to<long long>();
}

long long mod_pos(long long x, long long m) {
  x %= m;
  return x < 0 ? x + m : x;
}

int valuation_ll(long long x, int p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) x /= p, ++v;
  return v;
}

Rational parse_rational(const std::string& tok) {
  if (auto slash = tok.find('/'); slash != std::string::npos)
    return Rational(cpp_int(tok.substr(0, slash)), cpp_int(tok.substr(slash + 1)));
  if (auto dot = tok.find('.'); dot != std::string::npos) {
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    cpp_int den = 1;
    for (std::size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
    return Rational(cpp_int(digits), den);
  }
  return Rational(cpp_int(tok));
}

Rational rpow(int p, int e) {
  return e >= 0 ? Rational(cpp_int(ipow(p, e))) : Rational(cpp_int(1), cpp_int(ipow(p, -e)));
}

bool check_prime(int p) {
  if (p < 2) return false;
  for (int k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

// generators of the units = 1 mod p^m, modulo p^S
std::vector<long long> unit_generators(int p, int m, int S) {
  const long long M = ipow(p, S);
  if (m >= S) return {};
  if (p == 2) {
    if (m <= 1) return {M - 1, 5 % M};
    return {(1 + ipow(2, m)) % M};
  }
  if (m >= 1) return {(1 + ipow(p, m)) % M};
  // a primitive root mod p^2 generates every p^S
  for (long long g = 2; g < p * p; ++g) {
    if (g % p == 0) continue;
    long long x = 1;
    int ord = 0;
    do {
      x = x * g % (p * p);
      ++ord;
    } while (x != 1);
    if (ord == p * (p - 1)) return {g % M};
  }
  throw DomainError("no primitive root");
}

}  // namespace

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int padic_valuation(const Rational& x, int p) {
  if (x == 0) throw DomainError("valuation of 0");
  cpp_int n = numerator(x), d = denominator(x);
  int v = 0;
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  return v;
}

long long PadicSchwartz::size_of(int i) const { return ipow(p_, hi_[i] - lo_[i]); }

std::size_t PadicSchwartz::cell_index(std::span<const long long> r) const {
  std::size_t idx = 0, stride = 1;
  for (int i = 0; i < d_; ++i) {
    idx += std::size_t(r[i]) * stride;
    stride *= std::size_t(size_of(i));
  }
  return idx;
}

std::vector<long long> PadicSchwartz::cell_coords(std::size_t idx) const {
  std::vector<long long> r(d_);
  for (int i = 0; i < d_; ++i) {
    const auto n = std::size_t(size_of(i));
    r[i] = (long long)(idx % n);
    idx /= n;
  }
  return r;
}

bool PadicSchwartz::vec_zero(const Vec& v) const {
  if (v.empty()) return true;
  if (N_ == 0) return v[0] == 0;
  const long long step = ipow(p_, N_ - 1);
  for (long long k = 0; k < step; ++k)
    for (int j = 1; j < p_; ++j)
      if (v[k + j * step] != v[k]) return false;
  return true;
}

PadicSchwartz PadicSchwartz::from_balls(int p, int d, const std::vector<BallTerm>& terms) {
  if (!check_prime(p)) throw DomainError("p must be prime");
  if (d != 1 && d != 2) throw DomainError("dimension must be 1 or 2");
  if (terms.empty()) throw ZeroFunction("no terms");
  int lo = terms[0].level, hi = terms[0].level;
  cpp_int lcm = 1;
  for (const auto& t : terms) {
    if (int(t.center.size()) != d) throw DomainError("center has the wrong dimension");
    lo = std::min(lo, t.level);
    hi = std::max(hi, t.level);
    for (const auto& c : t.center)
      if (c != 0) lo = std::min(lo, padic_valuation(c, p));
    const cpp_int den = denominator(t.coeff);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  PadicSchwartz f;
  f.p_ = p;
  f.d_ = d;
  f.lo_.assign(d, lo);
  f.hi_.assign(d, hi);
  f.scale_ = Rational(1, lcm);
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= f.size_of(i);
  if (total > kMaxCells) throw BudgetExceeded("cell grid too large");
  f.values_.assign(std::size_t(total), Vec{});

  const long long M = ipow(p, hi - lo);
  for (const auto& t : terms) {
    const long long coeff = (t.coeff * lcm).convert_to<cpp_int>().convert_to<long long>();
    if (coeff == 0) continue;
    const long long step = ipow(p, t.level - lo);
    std::vector<long long> base(d);
    for (int i = 0; i < d; ++i) {
      const Rational scaled = t.center[i] / rpow(p, lo);
      base[i] = mod_pos(numerator(scaled), M) % step;
    }
    // all cells r with r_i = base_i mod step
    const long long per = M / step;
    const long long count = ipow(per, d);
    std::vector<long long> r(d);
    for (long long c = 0; c < count; ++c) {
      long long cc = c;
      for (int i = 0; i < d; ++i) {
        r[i] = base[i] + (cc % per) * step;
        cc /= per;
      }
      auto& v = f.values_[f.cell_index(r)];
      if (v.empty()) v.assign(1, 0);
      v[0] += coeff;
    }
  }
  return f;
}

PadicSchwartz PadicSchwartz::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int p = 0, d = 0;
  std::vector<BallTerm> terms;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 5) throw DomainError("schwartz line needs p d re im center... level");
    const int lp = std::stoi(tok[0]), ld = std::stoi(tok[1]);
    if (terms.empty()) p = lp, d = ld;
    if (lp != p || ld != d) throw DomainError("mixed p or d in one function");
    if (int(tok.size()) != 5 + d) throw DomainError("schwartz line has the wrong length");
    if (parse_rational(tok[3]) != 0) throw DomainError("complex coefficients are not exact; use real ones");
    BallTerm t;
    t.coeff = parse_rational(tok[2]);
    for (int i = 0; i < d; ++i) t.center.push_back(parse_rational(tok[4 + i]));
    t.level = std::stoi(tok[4 + d]);
    terms.push_back(std::move(t));
  }
  return from_balls(p, d, terms);
}

bool PadicSchwartz::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [this](const Vec& v) { return vec_zero(v); });
}

cplx PadicSchwartz::cell_value(std::size_t cell) const {
  const auto& v = values_.at(cell);
  if (v.empty()) return 0.0;
  const double M = double(v.size());
  cplx s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) s += double(v[k]) * std::polar(1.0, 2.0 * kPi * double(k) / M);
  return s * scale_.convert_to<double>();
}

cplx PadicSchwartz::operator()(std::span<const Rational> x) const {
  if (int(x.size()) != d_) throw DomainError("point has the wrong dimension");
  std::vector<long long> r(d_);
  for (int i = 0; i < d_; ++i) {
    if (x[i] == 0) {
      r[i] = 0;
      continue;
    }
    if (padic_valuation(x[i], p_) < lo_[i]) return 0.0;
    const Rational X = x[i] / rpow(p_, lo_[i]);
    r[i] = mod_pos(numerator(X), size_of(i));
  }
  return cell_value(cell_index(r));
}

PadicSchwartz PadicSchwartz::rewindow(const std::vector<int>& lo, const std::vector<int>& hi, int N) const {
  PadicSchwartz f;
  f.p_ = p_;
  f.d_ = d_;
  f.N_ = N;
  f.lo_ = lo;
  f.hi_ = hi;
  f.scale_ = scale_;
  long long total = 1;
  for (int i = 0; i < d_; ++i) {
    if (lo[i] > lo_[i] || hi[i] < hi_[i]) throw DomainError("rewindow must enlarge the box");
    total *= f.size_of(i);
  }
  if (N < N_) throw DomainError("rewindow cannot lower the root order");
  if (total > kMaxCells) throw BudgetExceeded("cell grid too large");
  f.values_.assign(std::size_t(total), Vec{});
  const long long M = ipow(p_, N), up = ipow(p_, N - N_);
  std::vector<long long> old(d_);
  for (std::size_t idx = 0; idx < f.values_.size(); ++idx) {
    const auto r = f.cell_coords(idx);
    bool inside = true;
    for (int i = 0; i < d_ && inside; ++i) {
      const long long shift = ipow(p_, lo_[i] - lo[i]);
      if (r[i] % shift != 0) inside = false;
      else old[i] = (r[i] / shift) % size_of(i);
    }
    if (!inside) continue;
    const auto& v = values_[cell_index(old)];
    if (v.empty()) continue;
    Vec w(std::size_t(M), 0);
    for (std::size_t k = 0; k < v.size(); ++k) w[std::size_t(k * up)] = v[k];
    f.values_[idx] = std::move(w);
  }
  return f;
}

bool exactly_equal(const PadicSchwartz& a, const PadicSchwartz& b) {
  if (a.p_ != b.p_ || a.d_ != b.d_) return false;
  std::vector<int> lo(a.d_), hi(a.d_);
  for (int i = 0; i < a.d_; ++i) {
    lo[i] = std::min(a.lo_[i], b.lo_[i]);
    hi[i] = std::max(a.hi_[i], b.hi_[i]);
  }
  const int N = std::max(a.N_, b.N_);
  const auto A = a.rewindow(lo, hi, N), B = b.rewindow(lo, hi, N);
  const Rational ratio = B.scale_ / A.scale_;  // compare den*va with num*vb
  const long long num = numerator(ratio).convert_to<long long>(), den = denominator(ratio).convert_to<long long>();
  const std::size_t M = std::size_t(ipow(a.p_, N));
  PadicSchwartz::Vec diff(M);
  for (std::size_t idx = 0; idx < A.values_.size(); ++idx) {
    const auto& va = A.values_[idx];
    const auto& vb = B.values_[idx];
    if (va.empty() && vb.empty()) continue;
    for (std::size_t k = 0; k < M; ++k)
      diff[k] = (va.empty() ? 0 : den * va[k]) - (vb.empty() ? 0 : num * vb[k]);
    if (!A.vec_zero(diff)) return false;
  }
  return true;
}

bool PadicSchwartz::invariant_at(int delta) const {
  for (int i = 0; i < d_; ++i)
    if (delta < lo_[i]) return false;  // only called with a nonzero function
  Vec diff;
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    auto r = cell_coords(idx);
    for (int i = 0; i < d_; ++i)
      if (delta < hi_[i]) r[i] %= ipow(p_, delta - lo_[i]);
    const std::size_t j = cell_index(r);
    if (j == idx) continue;
    const auto& a = values_[idx];
    const auto& b = values_[j];
    if (a.empty() && b.empty()) continue;
    diff.assign(std::max(a.size(), b.size()), 0);
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) diff[k] -= b[k];
    if (!vec_zero(diff)) return false;
  }
  return true;
}

bool PadicSchwartz::invariant_under(std::span<const long long> kappa, long long mod) const {
  Vec diff;
  std::vector<long long> r2(d_);
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    const auto r = cell_coords(idx);
    for (int j = 0; j < d_; ++j) {
      long long s = 0;
      for (int i = 0; i < d_; ++i) s = (s + r[i] * kappa[i * d_ + j]) % mod;
      r2[j] = s;
    }
    const auto& a = values_[idx];
    const auto& b = values_[cell_index(r2)];
    if (a.empty() && b.empty()) continue;
    diff.assign(std::max(a.size(), b.size()), 0);
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) diff[k] -= b[k];
    if (!vec_zero(diff)) return false;
  }
  return true;
}

int PadicSchwartz::multiplicative_index(int cap) const {
  // common box assumed
  const int S = hi_[0] - lo_[0];
  const long long M = ipow(p_, S);
  for (int m = 0; m <= cap; ++m) {
    if (m >= S) return m;
    bool ok = true;
    const auto units = unit_generators(p_, m, S);
    if (d_ == 1) {
      for (long long u : units) {
        const long long k[] = {u};
        if (!(ok = invariant_under(k, M))) break;
      }
    } else {
      const long long t = ipow(p_, m) % M;
      std::vector<std::array<long long, 4>> gens = {{1, t, 0, 1}, {1, 0, t, 1}};
      for (long long u : units) {
        gens.push_back({u, 0, 0, 1});
        gens.push_back({1, 0, 0, u});
      }
      for (const auto& g : gens)
        if (!(ok = invariant_under(g, M))) break;
    }
    if (ok) return m;
  }
  throw DomainError("multiplicative index beyond the search cap");
}

PadicIndices PadicSchwartz::indices() const {
  if (is_zero()) throw ZeroFunction("indices of the zero function");
  PadicIndices out;
  out.D = std::numeric_limits<int>::max();
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (vec_zero(values_[idx])) continue;
    const auto r = cell_coords(idx);
    for (int i = 0; i < d_; ++i)
      out.D = std::min(out.D, lo_[i] + valuation_ll(r[i], p_, hi_[i] - lo_[i]));
  }
  int delta = *std::max_element(hi_.begin(), hi_.end());
  while (delta > out.D && invariant_at(delta - 1)) --delta;
  out.delta = delta;

  const int lo = *std::min_element(lo_.begin(), lo_.end());
  const int hi = *std::max_element(hi_.begin(), hi_.end());
  const auto box = rewindow(std::vector<int>(d_, lo), std::vector<int>(d_, hi), N_);
  out.m = box.multiplicative_index(hi - lo + 1);
  return out;
}

PadicSchwartz PadicSchwartz::partial_fourier(std::span<const int> coords, int conductor) const {
  PadicSchwartz f = *this;
  for (int i : coords) {
    if (i < 0 || i >= d_) throw DomainError("coordinate out of range");
    const int S = f.hi_[i] - f.lo_[i];
    const int N = std::max(f.N_, S);
    PadicSchwartz g = f.rewindow(f.lo_, f.hi_, N);
    PadicSchwartz out = g;
    out.lo_[i] = -g.hi_[i] - conductor;
    out.hi_[i] = -g.lo_[i] - conductor;
    out.scale_ = g.scale_ / rpow(p_, g.hi_[i]);
    const long long n = g.size_of(i), M = ipow(p_, N), up = ipow(p_, N - S);
    std::vector<long long> r(d_);
    for (std::size_t idx = 0; idx < out.values_.size(); ++idx) {
      const auto rp = out.cell_coords(idx);
      Vec acc(std::size_t(M), 0);
      bool any = false;
      r = rp;
      for (long long a = 0; a < n; ++a) {
        r[i] = a;
        const auto& v = g.values_[g.cell_index(r)];
        if (v.empty()) continue;
        any = true;
        // psi(-a x) = zeta_{p^S}^{-a r'}
        const long long shift = mod_pos(-(a * rp[i] % n) * up, M);
        for (long long k = 0; k < M; ++k)
          if (v[k] != 0) acc[std::size_t((k + shift) % M)] += v[k];
      }
      out.values_[idx] = any ? std::move(acc) : Vec{};
    }
    f = std::move(out);
  }
  return f;
}

PadicSchwartz PadicSchwartz::fourier(int conductor) const {
  std::vector<int> all(d_);
  std::iota(all.begin(), all.end(), 0);
  return partial_fourier(all, conductor);
}

PadicSchwartz PadicSchwartz::reflect() const {
  PadicSchwartz f = *this;
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    auto r = cell_coords(idx);
    for (int i = 0; i < d_; ++i) r[i] = mod_pos(-r[i], size_of(i));
    f.values_[cell_index(r)] = values_[idx];
  }
  return f;
}

PadicSchwartz PadicSchwartz::translate(std::span<const long long> kappa) const {
  if (int(kappa.size()) != d_ * d_) throw DomainError("kappa has the wrong size");
  const long long det = d_ == 1 ? kappa[0] : kappa[0] * kappa[3] - kappa[1] * kappa[2];
  if (mod_pos(det, p_) == 0) throw DomainError("kappa is not in GL_d(Z_p)");
  const int lo = *std::min_element(lo_.begin(), lo_.end());
  const int hi = *std::max_element(hi_.begin(), hi_.end());
  const auto box = rewindow(std::vector<int>(d_, lo), std::vector<int>(d_, hi), N_);
  PadicSchwartz f = box;
  const long long M = ipow(p_, hi - lo);
  std::vector<long long> r2(d_);
  for (std::size_t idx = 0; idx < box.values_.size(); ++idx) {
    const auto r = box.cell_coords(idx);
    for (int j = 0; j < d_; ++j) {
      long long s = 0;
      for (int i = 0; i < d_; ++i) s = mod_pos(s + r[i] * mod_pos(kappa[i * d_ + j], M), M);
      r2[j] = s;
    }
    f.values_[idx] = box.values_[box.cell_index(r2)];
  }
  return f;
}

PadicSchwartz PadicSchwartz::scaled(const Rational& c) const {
  PadicSchwartz f = *this;
  if (c == 0) {
    for (auto& v : f.values_) v.clear();
    return f;
  }
  f.scale_ *= c;
  return f;
}

double PadicSchwartz::seminorm(double l, std::span<const double> sigma) const {
  if (!(l >= 1.0)) throw DomainError("norm index must be >= 1");
  if (int(sigma.size()) != d_) throw DomainError("sigma has the wrong dimension");
  for (double s : sigma)
    if (s < 0) throw DomainError("sigma must be nonnegative");
  const bool sup = std::isinf(l);
  const double q = p_;
  double acc = 0.0;
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (values_[idx].empty()) continue;
    const double a = std::abs(cell_value(idx));
    if (a == 0.0) continue;
    const auto r = cell_coords(idx);
    double w = 1.0;
    for (int i = 0; i < d_; ++i) {
      const double sg = sigma[i];
      if (r[i] != 0) {
        const int v = lo_[i] + valuation_ll(r[i], p_, hi_[i] - lo_[i]);
        w *= sup ? std::pow(q, -sg * v) : std::pow(q, -hi_[i]) * std::pow(q, -sg * l * v);
      } else if (sup) {
        w *= std::pow(q, -sg * hi_[i]);
      } else {
        // sum over shells v >= hi of (q^-v - q^-v-1) q^{-sg l v}
        const double e = 1.0 + sg * l;
        w *= (1.0 - 1.0 / q) * std::pow(q, -hi_[i] * e) / (1.0 - std::pow(q, -e));
      }
    }
    acc = sup ? std::max(acc, a * w) : acc + std::pow(a, l) * w;
  }
  return sup ? acc : std::pow(acc, 1.0 / l);
}

double PadicSchwartz::norm(double l) const {
  const std::vector<double> zero(d_, 0.0);
  return seminorm(l, zero);
}

PadicSchwartz random_schwartz(int p, int d, std::mt19937_64& rng, const RandomSchwartzOptions& opts) {
  std::uniform_int_distribution<int> nterms(1, opts.max_terms);
  std::uniform_int_distribution<int> level(opts.min_level, std::min(opts.max_level, opts.min_level + opts.max_span));
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (;;) {
    std::vector<BallTerm> terms(std::size_t(nterms(rng)));
    for (auto& t : terms) {
      t.level = level(rng);
      std::uniform_int_distribution<long long> a(0, ipow(p, t.level - opts.min_level) - 1);
      for (int i = 0; i < d; ++i) {
        const long long A = a(rng);
        t.center.push_back(Rational(A) * rpow(p, opts.min_level));
      }
      int c = 0;
      while (c == 0) c = coeff(rng);
      t.coeff = c;
    }
    auto f = PadicSchwartz::from_balls(p, d, terms);
    if (!f.is_zero()) return f;
  }
}

std::vector<long long> random_gl(int p, int d, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> e(0, ipow(p, k) - 1);
  for (;;) {
    std::vector<long long> m(std::size_t(d * d));
    for (auto& x : m) x = e(rng);
    const long long det = d == 1 ? m[0] : m[0] * m[3] - m[1] * m[2];
    if (mod_pos(det, p) != 0) return m;
  }
}

}  // namespace regint
