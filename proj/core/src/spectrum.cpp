#include "respsim/spectrum.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "respsim/error.hpp"

namespace respsim {

namespace {

// Planning is not thread safe in FFTW; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return w;
}

Periodogram periodogram(std::span<const double> samples, double sample_rate_hz) {
  if (samples.empty()) throw ParameterError("periodogram of an empty signal");
  if (!(sample_rate_hz > 0.0)) throw ParameterError("sample rate must be positive");
  const std::size_t n = samples.size();
  const std::size_t nfft = next_pow2(n);

  // Window-weighted mean: removes the windowed DC exactly, so no offset lump
  // leaks into the lowest bins.
  const auto w = hann_window(n);
  double mean = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += w[i] * samples[i];
    wsum += w[i];
  }
  mean = wsum > 0.0 ? mean / wsum : 0.0;

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * nfft)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (nfft / 2 + 1))));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in.get(), out.get(), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = (samples[i] - mean) * w[i];
  for (std::size_t i = n; i < nfft; ++i) in.get()[i] = 0.0;
  fftw_execute(plan);

  Periodogram p;
  p.nfft = nfft;
  p.bin_hz = sample_rate_hz / static_cast<double>(nfft);
  p.power.resize(nfft / 2 + 1);
  for (std::size_t k = 0; k < p.power.size(); ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    p.power[k] = re * re + im * im;
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return p;
}

}  // namespace respsim
