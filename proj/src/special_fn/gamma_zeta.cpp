#include "regint/special_fn.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "regint/errors.hpp"

namespace regint {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k)! for k = 1..12
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + double(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// Euler-Maclaurin; accurate for Re s >= 0 with N growing with |s|.
cplx zeta_em(cplx s) {
  const int N = 10 + static_cast<int>(std::ceil(std::abs(s)));
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
  const double logN = std::log(double(N));
  const cplx Nms = std::exp(-s * logN);
  sum += Nms * double(N) / (s - 1.0) + 0.5 * Nms;
  cplx rising = s;           // s (s+1) ... (s+2k-2)
  cplx power = Nms / double(N);  // N^{-s-1}
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    sum += kBernoulliOverFactorial[k] * rising * power;
    const double m = 2.0 * double(k) + 1.0;
    rising *= (s + m) * (s + m + 1.0);
    power /= double(N) * double(N);
  }
  return sum;
}

struct BitKey {
  std::uint64_t re, im;
  bool operator==(const BitKey&) const = default;
};
struct BitKeyHash {
  std::size_t operator()(const BitKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.re * 0x9E3779B97F4A7C15ULL ^ k.im);
  }
};

class LambdaCache {
 public:
  bool find(cplx s, cplx& out) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key(s));
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(cplx s, cplx value) {
    std::unique_lock lock(mutex_);
    if (map_.size() > (1u << 20)) map_.clear();
    map_.emplace(key(s), value);
  }

 private:
  static BitKey key(cplx s) {
    return {std::bit_cast<std::uint64_t>(s.real()), std::bit_cast<std::uint64_t>(s.imag())};
  }
  mutable std::shared_mutex mutex_;
  std::unordered_map<BitKey, cplx, BitKeyHash> map_;
};

LambdaCache& lambda_cache() {
  static LambdaCache cache;
  return cache;
}

cplx lambda_direct(cplx s) {
  return std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s)) * zeta(s);
}

}  // namespace

void require_finite(cplx z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(std::string("non-finite argument in ") + where);
}

cplx log_gamma(cplx z) {
  require_finite(z, "log_gamma");
  if (is_nonpositive_integer(z)) throw PoleError("gamma at non-positive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  // reflection; the branch of the logarithm is irrelevant to callers that exponentiate
  return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
}

cplx gamma(cplx z) {
  require_finite(z, "gamma");
  if (is_nonpositive_integer(z)) throw PoleError("gamma at non-positive integer");
  if (z.real() >= 0.5) return std::exp(log_gamma_right(z));
  return kPi / (std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)));
}

cplx zeta(cplx s) {
  require_finite(s, "zeta");
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta at s = 1");
  if (s.real() >= 0.0) return zeta_em(s);
  if (is_nonpositive_integer(s) && std::fmod(-s.real(), 2.0) == 0.0 && s.real() != 0.0)
    return 0.0;
  const cplx one_minus = 1.0 - s;
  return std::exp(s * std::log(2.0 * kPi) - std::log(kPi)) * std::sin(0.5 * kPi * s) *
         gamma(one_minus) * zeta_em(one_minus);
}

cplx completed_lambda(cplx s) {
  require_finite(s, "completed_lambda");
  if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("Lambda at s = 0 or 1");
  cplx value;
  if (lambda_cache().find(s, value)) return value;
  value = s.real() >= 0.5 ? lambda_direct(s) : lambda_direct(1.0 - s);
  lambda_cache().insert(s, value);
  return value;
}

cplx inv_completed_lambda(cplx s) {
  if (s == cplx(0.0) || s == cplx(1.0)) return 0.0;
  return 1.0 / completed_lambda(s);
}

cplx lambda_F(cplx s) {
  if (s == cplx(0.0)) throw PoleError("lambda_F at s = 0");
  if (s == cplx(-0.5)) return -1.0;
  return completed_lambda(-2.0 * s) / completed_lambda(2.0 + 2.0 * s);
}

cplx lambda_tilde(cplx s) {
  if (s == cplx(0.0)) return -1.0;
  if (s == cplx(0.5)) throw PoleError("lambda_tilde at s = 1/2");
  return completed_lambda(2.0 * s) / completed_lambda(1.0 + 2.0 * s);
}

}  // namespace regint
