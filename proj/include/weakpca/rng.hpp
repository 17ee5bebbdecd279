#pragma once

#include <cmath>
#include <cstdint>

namespace weakpca {

// Counter-based pseudo-random stream (Philox 2x64, 10 rounds). A stream is
// addressed by a (seed, stream index) pair: the seed is the Philox key and
// the stream index is the high word of the 128-bit counter, so distinct
// indices enumerate disjoint counter ranges. Identical (seed, index) pairs
// replay bit-identical integer sequences; concurrent use requires distinct
// indices (contract, not enforcement).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(seed), ctr_hi_(stream) {}

  std::uint64_t seed() const noexcept { return key_; }
  std::uint64_t stream() const noexcept { return ctr_hi_; }

  std::uint64_t next_u64() {
    if (avail_ == 0) refill();
    return buf_[--avail_];
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); never returns an endpoint.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Standard normal via the Marsaglia polar method (no trig calls).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Gamma(shape, scale 1) by Marsaglia-Tsang squeeze.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

 private:
  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
  }

  void refill() {
    constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ull;
    constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;
    std::uint64_t x0 = ctr_lo_++;
    std::uint64_t x1 = ctr_hi_;
    std::uint64_t k = key_;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi, lo;
      mulhilo(kMultiplier, x0, hi, lo);
      x0 = hi ^ k ^ x1;
      x1 = lo;
      k += kWeyl;
    }
    buf_[0] = x0;
    buf_[1] = x1;
    avail_ = 2;
  }

  std::uint64_t key_;
  std::uint64_t ctr_hi_;
  std::uint64_t ctr_lo_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int avail_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace weakpca
