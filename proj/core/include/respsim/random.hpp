#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace respsim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure function of
/// (counter, key); the output matches the Random123 reference.
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Map a 32-bit word to a uniform double in [0, 1).
inline double to_unit(std::uint32_t word) noexcept {
  return static_cast<double>(word) * 0x1.0p-32;
}

/// Unbiased-enough bounded draw on {0, ..., n-1} (multiply-shift, bias < n / 2^32).
inline std::uint32_t to_bounded(std::uint32_t word, std::uint32_t n) noexcept {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(word) * n) >> 32);
}

/// Standard normal quantile function, p in (0, 1).
double inverse_normal_cdf(double p) noexcept;

/// One standard normal per word: quantile at (word + 0.5) / 2^32, so |z| < 6.34.
inline double to_normal(std::uint32_t word) noexcept {
  return inverse_normal_cdf((static_cast<double>(word) + 0.5) * 0x1.0p-32);
}

/// Counter-based random stream addressed by (seed, stream, frame).
///
/// Every draw is a pure function of its address, so results never depend on
/// evaluation order or thread count. Counter layout of a block:
///   word 0: draw index, word 1: purpose tag, word 2: frame, word 3: stream.
/// The 64-bit seed is the Philox key.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t frame) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream),
        frame_(frame) {}

  PhiloxCounter block(std::uint32_t index, std::uint32_t tag) const noexcept {
    return philox4x32({index, tag, frame_, stream_}, key_);
  }

  /// Fill `out` with standard normals; element i is to_normal of word i % 4 of
  /// block i / 4, so it depends only on (address, tag, i).
  void fill_normal(std::span<double> out, std::uint32_t tag) const noexcept;

  std::uint64_t seed() const noexcept {
    return static_cast<std::uint64_t>(key_[0]) | (static_cast<std::uint64_t>(key_[1]) << 32);
  }
  std::uint32_t stream() const noexcept { return stream_; }
  std::uint32_t frame() const noexcept { return frame_; }

 private:
  PhiloxKey key_;
  std::uint32_t stream_;
  std::uint32_t frame_;
};

}  // namespace respsim
