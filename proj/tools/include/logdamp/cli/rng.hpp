#pragma once

#include <cstdint>

namespace logdamp::cli {

/// SplitMix64. `split(k)` derives the k-th independent stream from a seed, so
/// every randomized check draws from its own stream of the one config seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  SplitMix64 split(std::uint64_t stream) const noexcept {
    SplitMix64 mixer(state_ ^ (stream * 0xd1b54a32d192ed03ULL));
    return SplitMix64(mixer());
  }

 private:
  std::uint64_t state_;
};

}  // namespace logdamp::cli
