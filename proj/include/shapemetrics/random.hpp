#pragma once

// Portable, seedable random streams. Nothing here touches <random>
// distributions, whose output differs between standard libraries.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace shapemetrics {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for a named sub-stream: hash(master, tag, a, b). Distinct
/// (tag, a, b) tuples give unrelated streams, so adding a new consumer never
/// shifts an existing one.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t a = 0,
                          std::uint64_t b = 0) noexcept;

/// xoshiro256** seeded through SplitMix64. Satisfies
/// UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept;

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal by inverse-CDF transform of uniform().
  double normal() noexcept;
  double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

  /// Uniform integer in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  std::uint64_t s_[4];
};

/// Fisher-Yates with Rng::below, identical on every platform.
template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

/// Inverse of the standard normal CDF for p in (0, 1). Rational
/// approximation refined by one Halley step; |error| ~ 1e-15.
double normal_quantile(double p);

}  // namespace shapemetrics
