#pragma once

#include <cstdint>

namespace moa {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named substreams of one run's random generator.
enum class Stream : std::uint64_t {
  initialization = 1,
  variation = 2,
  evaluation = 3,
  clustering = 4,
  sampling = 5,
};

/// Counter-based generator: the i-th draw of a (seed, stream) pair is a pure
/// function of i, so substreams never interfere and draws can be indexed
/// directly from parallel code.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}
  CounterRng(std::uint64_t seed, Stream stream) noexcept
      : CounterRng(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t at(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform in [0, 1).
  double uniform() noexcept { return to_unit(next()); }

  /// Uniform in the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift; bias is below 2^-64 * n, irrelevant here.
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

  std::uint64_t counter() const noexcept { return counter_; }

  static double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace moa
