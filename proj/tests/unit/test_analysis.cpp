#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "respsim/analysis.hpp"
#include "respsim/error.hpp"
#include "respsim/spectrum.hpp"
#include "test_support.hpp"

namespace respsim::analysis {
namespace {

using test::sine;

TEST(Spectrum, NextPow2) {
  EXPECT_EQ(next_pow2(1), 1u);
  EXPECT_EQ(next_pow2(900), 1024u);
  EXPECT_EQ(next_pow2(1024), 1024u);
  EXPECT_EQ(next_pow2(1025), 2048u);
}

TEST(Spectrum, HannWindow) {
  EXPECT_EQ(hann_window(1), std::vector<double>{1.0});
  const auto w = hann_window(5);
  EXPECT_NEAR(w[0], 0.0, 1e-15);
  EXPECT_NEAR(w[2], 1.0, 1e-15);
  EXPECT_NEAR(w[1], 0.5, 1e-15);
  EXPECT_NEAR(w[4], 0.0, 1e-15);
}

TEST(Spectrum, BinSpacingAndPeak) {
  const auto s = sine(3.0, 64.0, 256);
  const auto p = periodogram(s.samples, 64.0);
  EXPECT_EQ(p.nfft, 256u);
  EXPECT_EQ(p.power.size(), 129u);
  EXPECT_DOUBLE_EQ(p.bin_hz, 0.25);
  const auto k = std::max_element(p.power.begin(), p.power.end()) - p.power.begin();
  EXPECT_EQ(k, 12);
  EXPECT_NEAR(p.power[0], 0.0, 1e-9);
}

TEST(Snr, PureSineIsCapped) {
  const auto r = snr(sine(0.25, 30.0, 900), 0.25);
  EXPECT_GE(r.rho, 0.999);
  EXPECT_GT(r.snr_db, 25.0);
  EXPECT_LE(r.snr_db, kSnrCapDb);
}

TEST(Snr, ExactInBandSignalHitsCap) {
  // A sine on an exact bin with a rectangular-like spectrum has negligible leakage beyond the band.
  auto s = sine(0.25, 30.0, 900);
  for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] += 0.5 * std::sin(2 * std::numbers::pi * 0.5 * i / 30.0);
  const auto r = snr(s, 0.25, 0.2);
  EXPECT_GT(r.snr_db, 50.0);
}

TEST(Snr, InvariantUnderAffineMaps) {
  auto s = sine(0.3, 30.0, 900);
  const auto n = test::white_noise(900, 0.5, 1);
  for (std::size_t i = 0; i < 900; ++i) s.samples[i] += n[i];
  auto t = s;
  for (auto& v : t.samples) v = -3.0 * v + 17.0;
  EXPECT_NEAR(snr(s, 0.3).snr_db, snr(t, 0.3).snr_db, 1e-9);
  EXPECT_NEAR(snr(s, 0.3).rho, snr(t, 0.3).rho, 1e-12);
}

TEST(Snr, MonotoneInRho) {
  double prev = -1e9;
  for (double a : {0.1, 0.3, 1.0, 3.0}) {
    auto s = sine(0.25, 30.0, 900, a);
    const auto n = test::white_noise(900, 1.0, 2);
    for (std::size_t i = 0; i < 900; ++i) s.samples[i] += n[i];
    const auto r = snr(s, 0.25);
    EXPECT_GT(r.rho, 0.0);
    EXPECT_LE(r.rho, 1.0);
    EXPECT_GT(r.snr_db, prev);
    prev = r.snr_db;
  }
}

TEST(Snr, Preconditions) {
  EXPECT_THROW(snr(sine(0.25, 30.0, 200), 0.25), ParameterError);
  EXPECT_THROW(snr(sine(0.25, 30.0, 900), 8.0), ParameterError);
  EXPECT_THROW(snr(sine(0.25, 30.0, 900), 0.0), ParameterError);
  EXPECT_THROW(snr(sine(0.25, 30.0, 900), 0.25, 0.0), ParameterError);
  EXPECT_THROW(snr(signals::RespSignal{std::vector<double>(900, 2.0), 30.0}, 0.25), DegenerateSignalError);
}

TEST(DetectF0, PureSine) {
  const auto e = detect_f0(sine(0.25, 30.0, 900));
  EXPECT_NEAR(e.f0_hz, 0.25, 0.005);
  EXPECT_FALSE(e.harmonic_ambiguity);
}

TEST(DetectF0, EqualPeaksPreferLowestAndFlag) {
  auto s = sine(0.2, 30.0, 1800);
  const auto h = sine(0.4, 30.0, 1800);
  for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] += h.samples[i];
  const auto e = detect_f0(s);
  EXPECT_NEAR(e.f0_hz, 0.2, 0.005);
  EXPECT_TRUE(e.harmonic_ambiguity);
}

TEST(DetectF0, NoPeakInRange) {
  EXPECT_THROW(detect_f0(signals::RespSignal{std::vector<double>(900, 1.0), 30.0}), Error);
  EXPECT_THROW(detect_f0(sine(0.25, 30.0, 900), 0.5, 0.1), ParameterError);
}

TEST(NoiseStd, IdenticalFramesGiveZeroAndSymmetric) {
  const DepthFrame a = test::step_frame(20, 10, 5, 1.0f, 2.0f);
  EXPECT_EQ(frame_noise_std(a, a), 0.0);
  DepthFrame b = a;
  b.depth[3] += 0.5f;
  b.depth[17] -= 0.25f;
  EXPECT_DOUBLE_EQ(frame_noise_std(a, b), frame_noise_std(b, a));
  EXPECT_GT(frame_noise_std(a, b), 0.0);
  DepthVideo va, vb;
  va.frames = {a, a};
  vb.frames = {a, b};
  EXPECT_DOUBLE_EQ(measure_noise_std(vb, va), frame_noise_std(b, a) / 2.0);
  EXPECT_THROW(frame_noise_std(a, DepthFrame(3, 3)), ParameterError);
}

TEST(AxialSensitivity, QuadraticLaw) {
  EXPECT_DOUBLE_EQ(axial_sensitivity(2.0, 1.0, 1.0, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(axial_sensitivity(3.0, 0.5, 2.0, 0.1) * 4.0, axial_sensitivity(6.0, 0.5, 2.0, 0.1));
  EXPECT_THROW(axial_sensitivity(1.0, 1.0, 0.0, 1.0), ParameterError);
}

TEST(Pearson, KnownValues) {
  const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
  EXPECT_NEAR(pearson(a, b), 1.0, 1e-15);
  EXPECT_NEAR(pearson(a, c), -1.0, 1e-15);
}

TEST(Moments, GaussianSample) {
  const auto x = test::white_noise(200000, 2.0, 4);
  const auto m = moments(x);
  EXPECT_NEAR(m.mean, 0.0, 0.02);
  EXPECT_NEAR(m.stddev, 2.0, 0.02);
  EXPECT_NEAR(m.skewness, 0.0, 0.03);
  EXPECT_NEAR(m.excess_kurtosis, 0.0, 0.05);
  const std::vector<double> two{0.0, 1.0};
  EXPECT_NEAR(moments(two).excess_kurtosis, -2.0, 1e-12);
}

TEST(Report, JsonFields) {
  SnrReport r;
  r.snr_db = 6.5;
  r.seed = 3;
  const auto j = to_json(r);
  for (const char* key : {"noise_spec", "scale", "empirical_sigma_m", "rho", "snr_db", "f0_hz", "band_hz", "seed",
                          "harmonic_ambiguity"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["seed"], 3);
}

}  // namespace
}  // namespace respsim::analysis
