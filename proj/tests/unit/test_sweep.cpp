#include <gtest/gtest.h>

#include <cmath>

#include "respsim/error.hpp"
#include "respsim/sweep.hpp"
#include "test_support.hpp"

namespace respsim::sweep {
namespace {

// Small rendered clean video shared by the tests in this file.
const DepthVideo& clean_video() {
  static const DepthVideo v = scene::animate(test::small_scene(), test::clean_driver(0.25, 20.0), 30.0);
  return v;
}

extract::RoiSpec small_roi() { return extract::default_roi(test::small_scene(), 70, 52); }

TEST(Grid, Validation) {
  SweepGrid g{{noise::Gaussian{}}, "sigma_m", {0.01, 0.02}, {1.0}, {1}, {}};
  EXPECT_NO_THROW(g.validate());
  auto bad = g;
  bad.values = {0.02, 0.01};
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = g;
  bad.values.clear();
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = g;
  bad.scales = {1.2};
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = g;
  bad.seeds.clear();
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = g;
  bad.param_name = "d_level";
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(Grid, ChainForSetsValueAndSeeds) {
  SweepGrid g{{noise::EdgeGaussian{}}, "sigma_g_px", {4.0}, {1.0}, {1}, {{noise::Motion{4.0}, 99}}};
  const auto chain = g.chain_for(12.0, 7);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].type_name(), "motion");
  EXPECT_EQ(std::get<noise::EdgeGaussian>(chain[1].model).sigma_g_px, 12.0);
  EXPECT_EQ(chain[0].seed, 7u);
  EXPECT_EQ(chain[1].seed, 7u);
}

TEST(Measure, EmptyChainMatchesExtraction) {
  const std::vector<double> scales{1.0, 0.2};
  const auto m = corrupt_and_measure(clean_video(), {}, small_roi(), scales, 2);
  auto roi = small_roi();
  roi.scale = 0.2;
  EXPECT_EQ(m.roi_means[1], extract::extract_signal(clean_video(), roi).samples);
  EXPECT_EQ(m.mean_sigma(), 0.0);
}

TEST(RunSweep, OneCellZeroNoiseEqualsCleanSnr) {
  SweepGrid g{{noise::Gaussian{}}, "sigma_m", {1e-12}, {1.0}, {1}, {}};
  SweepSettings st;
  st.roi = small_roi();
  const auto res = run_sweep(clean_video(), g, st);
  ASSERT_EQ(res.rows.size(), 1u);
  ASSERT_EQ(res.summary.size(), 1u);
  const auto clean = analysis::snr(extract::extract_signal(clean_video(), st.roi), 0.25);
  EXPECT_NEAR(res.rows[0].snr_db, clean.snr_db, 1e-9);
  EXPECT_EQ(res.summary[0].n_seeds, 1u);
  EXPECT_EQ(res.summary[0].snr_db_std, 0.0);
}

TEST(RunSweep, RowOrderCountAndDeterminism) {
  SweepGrid g{{noise::Gaussian{}}, "sigma_m", {0.01, 0.02}, {1.0, 0.2}, {1, 2, 3}, {}};
  SweepSettings st;
  st.roi = small_roi();
  st.threads = 1;
  const auto a = run_sweep(clean_video(), g, st);
  st.threads = 3;
  const auto b = run_sweep(clean_video(), g, st);
  ASSERT_EQ(a.rows.size(), 12u);
  ASSERT_EQ(a.summary.size(), 4u);
  EXPECT_EQ(a.rows[0].param_value, 0.01);
  EXPECT_EQ(a.rows[0].scale, 1.0);
  EXPECT_EQ(a.rows[2].seed, 3u);
  EXPECT_EQ(a.rows[3].scale, 0.2);
  EXPECT_EQ(a.rows[6].param_value, 0.02);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].snr_db, b.rows[i].snr_db);
    EXPECT_EQ(a.rows[i].empirical_sigma_m, b.rows[i].empirical_sigma_m);
  }
  EXPECT_EQ(a.summary[0].n_seeds, 3u);
  EXPECT_NEAR(a.summary[0].snr_db_mean, (a.rows[0].snr_db + a.rows[1].snr_db + a.rows[2].snr_db) / 3.0, 1e-12);
}

TEST(RunSweep, FailingCellBecomesErrorRow) {
  // A 100 px shift does not fit in the 120 px tall frame at the second value.
  SweepGrid g{{noise::Motion{}}, "max_shift_px", {2.0, 200.0}, {1.0}, {1}, {}};
  SweepSettings st;
  st.roi = small_roi();
  const auto res = run_sweep(clean_video(), g, st);
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_TRUE(res.rows[0].error.empty());
  EXPECT_FALSE(res.rows[1].error.empty());
  EXPECT_TRUE(std::isnan(res.rows[1].snr_db));
  EXPECT_TRUE(std::isnan(res.summary[1].snr_db_mean));
  EXPECT_EQ(res.summary[1].n_seeds, 0u);
}

TEST(Calibrate, RecoversKnownGain) {
  const auto clean = test::sine(0.25, 30.0, 900);
  std::vector<std::vector<double>> noise;
  for (unsigned s = 0; s < 3; ++s) noise.push_back(test::white_noise(900, 0.3, s));
  const double k = calibrate_gain(clean, noise, 0.25, 0.1, 5.0);
  double mean = 0.0;
  for (const auto& n : noise) {
    signals::RespSignal x{std::vector<double>(900), 30.0};
    for (std::size_t i = 0; i < 900; ++i) x.samples[i] = k * clean.samples[i] + n[i];
    mean += analysis::snr(x, 0.25).snr_db / 3.0;
  }
  EXPECT_NEAR(mean, 5.0, 1e-3);
  EXPECT_THROW(calibrate_gain(clean, noise, 0.25, 0.1, 5.0, 100.0, 1000.0), Error);
}

}  // namespace
}  // namespace respsim::sweep
