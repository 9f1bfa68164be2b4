#include <gtest/gtest.h>

#include <cmath>

#include "oracle_support.hpp"
#include "respsim/signals.hpp"

namespace respsim::oracle {
namespace {

TEST(SignalOracle, SynthesisPeakAtRateWithinOneBin) {
  signals::SynthesisParams p;
  p.rate_hz = 0.25;
  p.duration_s = 30.0;
  const auto s = signals::synthesize(p);
  ASSERT_EQ(s.size(), 3000u);
  // 30 s at 0.25 Hz is 7.5 cycles.
  EXPECT_DOUBLE_EQ(p.duration_s * p.rate_hz, 7.5);
  const auto x = demean(s.samples);
  int best = 0;
  double best_power = -1.0;
  for (int k = 1; k < 300; ++k) {
    const double pw = std::norm(dft_at(x, k));
    if (pw > best_power) {
      best_power = pw;
      best = k;
    }
  }
  const double bin_hz = s.sample_rate_hz / static_cast<double>(s.size());
  EXPECT_LE(std::abs(best * bin_hz - 0.25), bin_hz);
}

TEST(SignalOracle, RampResamplesOntoIdealLine) {
  signals::RespSignal ramp{std::vector<double>(100), 100.0};
  for (int i = 0; i < 100; ++i) ramp.samples[i] = i;
  const auto r = signals::resample_linear(ramp, 30.0);
  ASSERT_EQ(r.size(), 30u);
  double worst = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) worst = std::max(worst, std::abs(r.samples[j] - j * 100.0 / 30.0));
  EXPECT_LT(worst, 1e-9);
}

TEST(SignalOracle, ButterworthStopsFiveHertzKeepsPointTwo) {
  signals::RespSignal s{std::vector<double>(900), 30.0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = static_cast<double>(i) / 30.0;
    s.samples[i] = std::sin(2 * std::numbers::pi * 0.2 * t) + std::sin(2 * std::numbers::pi * 5.0 * t);
  }
  const auto y = signals::lowpass_butter4(s, 1.0);
  // Central 20 s: 4 cycles of 0.2 Hz, 100 cycles of 5 Hz, away from edge transients.
  const std::vector<double> xin(s.samples.begin() + 150, s.samples.begin() + 750);
  const std::vector<double> xout(y.samples.begin() + 150, y.samples.begin() + 750);
  const double a_low = tone_amplitude(xout, 4) / tone_amplitude(xin, 4);
  const double a_high = tone_amplitude(xout, 100) / tone_amplitude(xin, 100);
  EXPECT_NEAR(a_low, 1.0, 0.01);
  EXPECT_LT(20.0 * std::log10(a_high), -40.0);
}

TEST(SignalOracle, ButterworthSuppressesWhiteNoiseAboveTwoHertz) {
  const std::size_t n = 2048;
  signals::RespSignal s{test::white_noise(n, 1.0, 17), 30.0};
  const auto y = signals::lowpass_butter4(s, 1.0);
  auto band_energy = [&](const std::vector<double>& x) {
    double e = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
      if (k * 30.0 / n > 2.0) e += std::norm(dft_at(x, static_cast<double>(k)));
    }
    return e;
  };
  EXPECT_LT(10.0 * std::log10(band_energy(y.samples) / band_energy(s.samples)), -30.0);
}

}  // namespace
}  // namespace respsim::oracle
