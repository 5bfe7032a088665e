#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "kfuse/normal.hpp"

namespace kfuse {

// SplitMix64 finalizer; also used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for stream `index` of a run keyed by `master`. Replicates drawn from
// derived seeds are order-independent, so parallel execution stays
// reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

// xoshiro256++ (Blackman & Vigna 2019), state filled by SplitMix64.
// All distribution transforms below are fixed algorithms on the uniform
// stream, so output is a pure function of the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : s_) {
      s += 0x9E3779B97F4A7C15ULL;
      w = mix64(s);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // [0, 1), 53-bit resolution
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1) strictly; safe under log/quantile transforms
  double u01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return norm_quantile(u01_open()); }

  double cauchy() { return std::tan(M_PI * (u01_open() - 0.5)); }

  // Student t with 2 df: Z / sqrt(chi^2_2 / 2), chi^2_2 = -2 log U
  double t2() {
    const double z = normal();
    return z / std::sqrt(-std::log(u01_open()));
  }

  // 0.5 N(3, 0.3^2) + 0.5 N(-3, 0.3^2)
  double mixture_pm3() {
    const double u = u01();
    const double z = normal();
    return (u < 0.5 ? 3.0 : -3.0) + 0.3 * z;
  }

  // Uniform integer in [0, bound)
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(u01() * static_cast<double>(bound));
  }

  // CDF inversion for small means, Hoermann's PTRS transformed rejection for
  // moderate ones, rounded normal approximation for huge ones (the PTRS
  // log-acceptance test loses all precision once mu*log(mu) ~ 1/eps).
  double poisson(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw std::invalid_argument("poisson: mean must be finite and >= 0");
    }
    if (mu == 0.0) return 0.0;
    if (mu <= 10.0) return poisson_inversion(mu);
    if (mu <= 1e8) return poisson_ptrs(mu);
    const double v = std::round(mu + std::sqrt(mu) * normal());
    return v < 0.0 ? 0.0 : v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  double poisson_inversion(double mu) {
    const double u = u01();
    double p = std::exp(-mu);
    double cum = p;
    double k = 0.0;
    while (u > cum && k < 1000.0) {
      k += 1.0;
      p *= mu / k;
      cum += p;
    }
    return k;
  }

  double poisson_ptrs(double mu) {
    const double b = 0.931 + 2.53 * std::sqrt(mu);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mu = std::log(mu);
    for (;;) {
      const double u = u01() - 0.5;
      const double v = u01();
      const double us = 0.5 - std::fabs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
      if (us >= 0.07 && v <= v_r) return k;
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * log_mu - mu - std::lgamma(k + 1.0)) {
        return k;
      }
    }
  }

  std::uint64_t s_[4];
};

}  // namespace kfuse
