#include <gtest/gtest.h>

#include <cmath>

#include "oracle_support.hpp"
#include "respsim/analysis.hpp"
#include "respsim/extract.hpp"
#include "respsim/noise.hpp"

namespace respsim::oracle {
namespace {

// Depth shrinks as the chest rises toward the camera, so the extracted
// signal is anti-correlated with the driver.
double driver_correlation(double scale) {
  const auto& run = default_run();
  auto roi = extract::default_roi(run.scene);
  roi.scale = scale;
  const auto sig = extract::extract_signal(run.video, roi, 0);
  return analysis::pearson(demean(sig.samples), demean(run.driver.samples));
}

TEST(ExtractOracle, NoiselessFullScaleTracksDriver) {
  const double r = driver_correlation(1.0);
  EXPECT_LT(r, -0.999);
}

TEST(ExtractOracle, NoiselessTwentiethScaleTracksDriver) {
  const double r = driver_correlation(0.05);
  EXPECT_LT(r, -0.99);
}

TEST(ExtractOracle, RoiAveragingShrinksNoiseBySqrtN) {
  const int w = 300, h = 220;
  const extract::RoiSpec base{10, 7, 280, 206, 1.0};
  const double sigma = 0.05;
  const DepthFrame clean(w, h, 1.2f);
  for (double scale : {1.0, 0.2}) {
    auto roi = base;
    roi.scale = scale;
    const auto [sw, sh] = roi.scaled_size();
    const double n = static_cast<double>(sw) * sh;
    DepthVideo video;
    for (std::uint32_t f = 0; f < 900; ++f) video.frames.push_back(noise::apply_gaussian(clean, sigma, CounterStream(31, 0, f)));
    const auto sig = extract::extract_signal(video, roi, 0);
    EXPECT_NEAR(test::sample_std(sig.samples) / (sigma / std::sqrt(n)), 1.0, 0.10) << scale;
  }
}

}  // namespace
}  // namespace respsim::oracle
