#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hydrolfc::rng {

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-derived random streams. Every consumer derives its own stream
// from (seed, a, b, salt), so draws are independent of evaluation order
// and of how work is split across threads. The generator is splitmix64;
// uniform and gaussian variates avoid the implementation-defined library
// distributions, so a given stream yields the same sequence on every
// standard-conforming build of the same binary.
class Stream {
 public:
  explicit Stream(std::uint64_t state) : state_(state) {}

  static Stream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t salt) {
    std::uint64_t h = seed;
    h = detail::mix64(h + detail::kGamma + a);
    h = detail::mix64(h + detail::kGamma + b);
    h = detail::mix64(h + detail::kGamma + salt);
    return Stream(h);
  }

  std::uint64_t next_u64() {
    state_ += detail::kGamma;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  // Standard normal via Box-Muller; consumes exactly two raw draws.
  double next_gaussian() {
    double u1 = next_unit();
    const double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n); n must be positive.
  int next_index(int n) {
    const auto wide = static_cast<unsigned __int128>(next_u64()) *
                      static_cast<unsigned __int128>(n);
    return static_cast<int>(wide >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stream salts. Keeping them in one place avoids accidental overlap
// between independent consumers of the same seed.
enum class Salt : std::uint64_t {
  kPopulationInit = 0x01,
  kBreeding = 0x02,
  kSurrogateLayer = 0x03,
  kTest = 0xFF,
};

inline Stream derive_stream(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b, Salt salt) {
  return Stream::derive(seed, a, b, static_cast<std::uint64_t>(salt));
}

}  // namespace hydrolfc::rng
