#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace respsim {

/// One-sided power spectrum on bins k = 0 .. nfft/2.
struct Periodogram {
  std::vector<double> power;
  double bin_hz = 0.0;
  std::size_t nfft = 0;

  double frequency(std::size_t k) const { return static_cast<double>(k) * bin_hz; }
};

std::size_t next_pow2(std::size_t n);

/// Symmetric Hann window of length n (n == 1 gives {1}).
std::vector<double> hann_window(std::size_t n);

/// Window-weighted mean removal, Hann window, zero padding to the next power of two, |FFT|^2.
/// Unnormalised: only ratios of bins are meaningful.
Periodogram periodogram(std::span<const double> samples, double sample_rate_hz);

}  // namespace respsim
