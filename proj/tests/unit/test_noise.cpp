#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "respsim/error.hpp"
#include "respsim/noise.hpp"
#include "test_support.hpp"

namespace respsim::noise {
namespace {

using test::flat_frame;
using test::step_frame;

DepthFrame ramp_frame(int w, int h) {
  DepthFrame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.at(x, y) = static_cast<float>(x + 100 * y + 1);
  return f;
}

TEST(Gaussian, TinySigmaIsIdentity) {
  const auto f = flat_frame(32, 16, 2.0f);
  EXPECT_EQ(apply_gaussian(f, 1e-12, CounterStream(1, 0, 0)), f);
}

TEST(Gaussian, SameStreamSameOutput) {
  const auto f = ramp_frame(33, 17);
  EXPECT_EQ(apply_gaussian(f, 0.1, CounterStream(5, 0, 3)), apply_gaussian(f, 0.1, CounterStream(5, 0, 3)));
  EXPECT_NE(apply_gaussian(f, 0.1, CounterStream(5, 0, 3)), apply_gaussian(f, 0.1, CounterStream(5, 0, 4)));
  EXPECT_NE(apply_gaussian(f, 0.1, CounterStream(5, 0, 3)), apply_gaussian(f, 0.1, CounterStream(6, 0, 3)));
}

TEST(Gaussian, RejectsNonPositiveSigma) {
  EXPECT_THROW(apply_gaussian(flat_frame(8, 8, 1.0f), 0.0, CounterStream(0, 0, 0)), ParameterError);
}

TEST(Axial, PixelAtOffsetUnchanged) {
  const auto f = flat_frame(16, 16, 1.5f);
  EXPECT_EQ(apply_axial(f, 1.5, 0.3, CounterStream(2, 0, 0)), f);
  EXPECT_THROW(apply_axial(f, 0.0, 0.0, CounterStream(2, 0, 0)), ParameterError);
}

TEST(Radial, MaskValues) {
  EXPECT_EQ(radial_mask(2, 2, 5, 5), 0.0);
  EXPECT_DOUBLE_EQ(radial_mask(0, 0, 5, 5), 1.0);
  EXPECT_DOUBLE_EQ(radial_mask(4, 4, 5, 5), 1.0);
  EXPECT_DOUBLE_EQ(radial_mask(1, 1, 5, 5), 0.5);
  EXPECT_DOUBLE_EQ(radial_mask(3, 1, 5, 5), 0.5);
}

TEST(Radial, CentrePixelUnchanged) {
  const auto f = flat_frame(9, 7, 1.0f);
  const auto out = apply_radial(f, 0.5, CounterStream(3, 0, 0));
  EXPECT_EQ(out.at(4, 3), 1.0f);
  EXPECT_NE(out.at(0, 0), 1.0f);
}

TEST(Motion, SubHalfPixelRoundsToIdentity) {
  const auto f = ramp_frame(10, 10);
  for (std::uint32_t t = 0; t < 20; ++t) EXPECT_EQ(apply_motion_frame(f, 0.4, CounterStream(1, 0, t)), f);
}

TEST(Motion, TranslationDefinition) {
  const auto f = ramp_frame(6, 4);
  const auto out = translate(f, {1, 0});
  for (int y = 0; y < 4; ++y) {
    EXPECT_EQ(out.at(0, y), f.at(0, y));  // edge replication
    for (int x = 1; x < 6; ++x) EXPECT_EQ(out.at(x, y), f.at(x - 1, y));
  }
  const auto up = translate(f, {-2, -1});
  EXPECT_EQ(up.at(0, 0), f.at(2, 1));
  EXPECT_EQ(up.at(5, 3), f.at(5, 3));
}

TEST(Motion, ShiftComponentsWithinBound) {
  std::set<int> seen;
  for (std::uint32_t t = 0; t < 2000; ++t) {
    const auto s = draw_shift(2.6, CounterStream(9, 0, t));
    EXPECT_LE(std::abs(s.dx), 3);
    EXPECT_LE(std::abs(s.dy), 3);
    seen.insert(s.dx);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Motion, ShiftReachingFrameSizeIsRejected) {
  EXPECT_THROW(apply_motion_frame(flat_frame(8, 20, 1.0f), 8.0, CounterStream(0, 0, 0)), ParameterError);
  EXPECT_THROW(apply_motion_frame(flat_frame(8, 8, 1.0f), 0.0, CounterStream(0, 0, 0)), ParameterError);
}

TEST(Motion, InteriorIsSubMultisetOfInput) {
  const auto f = ramp_frame(20, 15);
  std::multiset<float> in(f.depth.begin(), f.depth.end());
  for (std::uint32_t t = 0; t < 10; ++t) {
    const auto out = apply_motion_frame(f, 3.0, CounterStream(4, 0, t));
    std::multiset<float> remaining = in;
    for (int y = 3; y < 12; ++y) {
      for (int x = 3; x < 17; ++x) {
        const auto it = remaining.find(out.at(x, y));
        ASSERT_NE(it, remaining.end());
        remaining.erase(it);
      }
    }
  }
}

TEST(Aoe, FlatFrameGivesZeroMask) {
  const auto m = edge_aoe(flat_frame(20, 20, 1.0f), 2.0, 0.05);
  for (float v : m.values) EXPECT_EQ(v, 0.0f);
  EXPECT_THROW(edge_aoe(flat_frame(4, 4, 1.0f), 0.0, 0.05), ParameterError);
}

TEST(Aoe, ValuesInUnitIntervalWithUnitMax) {
  const auto f = step_frame(40, 30, 17, 1.0f, 2.0f);
  const auto m = edge_aoe(f, 3.0, 0.05);
  float mx = 0.0f;
  for (float v : m.values) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 1.0f);
    EXPECT_TRUE(v == 0.0f || v >= 0.05f);
    mx = std::max(mx, v);
  }
  EXPECT_EQ(mx, 1.0f);
}

TEST(EdgeGaussian, FlatFrameUnchanged) {
  const auto f = flat_frame(20, 20, 1.0f);
  EXPECT_EQ(apply_edge_gaussian(f, {2.0, 0.5, 0.05}, CounterStream(1, 0, 0)), f);
}

TEST(EdgePermutation, FlatFrameUnchanged) {
  const auto f = flat_frame(20, 20, 1.0f);
  EXPECT_EQ(apply_edge_permutation(f, EdgePermutation{2.0, 2, 0.05}, CounterStream(1, 0, 0)), f);
}

TEST(EdgePermutation, ChangedValuesExistWithinRadius) {
  const auto f = ramp_frame(30, 20);
  const int r = 2;
  AoeMask mask{30, 20, std::vector<float>(600, 1.0f)};
  const auto out = apply_edge_permutation(f, mask, r, CounterStream(8, 0, 0));
  std::size_t changed = 0;
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 30; ++x) {
      if (out.at(x, y) == f.at(x, y)) continue;
      ++changed;
      bool found = false;
      for (int dy = -r; dy <= r && !found; ++dy)
        for (int dx = -r; dx <= r && !found; ++dx) {
          const int qx = x + dx, qy = y + dy;
          if (dx * dx + dy * dy > r * r || qx < 0 || qy < 0 || qx >= 30 || qy >= 20) continue;
          found = f.at(qx, qy) == out.at(x, y);
        }
      EXPECT_TRUE(found) << x << "," << y;
    }
  }
  EXPECT_GT(changed, 400u);
}

TEST(EdgePermutation, MaskGatesProbability) {
  const auto f = ramp_frame(100, 100);
  AoeMask half{100, 100, std::vector<float>(10000, 0.5f)};
  const auto out = apply_edge_permutation(f, half, 1, CounterStream(8, 0, 0));
  std::size_t changed = 0;
  for (std::size_t i = 0; i < f.size(); ++i) changed += out.depth[i] != f.depth[i];
  // P(change) = 0.5 * (1 - P(centre of the 5-offset disk)) = 0.4 away from the border.
  EXPECT_NEAR(static_cast<double>(changed) / 10000.0, 0.4, 0.03);
}

TEST(EdgePermutation, RejectsBadArguments) {
  const auto f = flat_frame(10, 10, 1.0f);
  EXPECT_THROW(apply_edge_permutation(f, AoeMask{10, 10, std::vector<float>(100, 1.0f)}, 0, CounterStream(0, 0, 0)),
               ParameterError);
  EXPECT_THROW(apply_edge_permutation(f, AoeMask{5, 10, std::vector<float>(50, 1.0f)}, 1, CounterStream(0, 0, 0)),
               ParameterError);
}

TEST(Spec, TypeNamesAndValidation) {
  EXPECT_EQ(NoiseSpec{Gaussian{}}.type_name(), "gaussian");
  EXPECT_EQ(NoiseSpec{Axial{}}.type_name(), "axial");
  EXPECT_EQ(NoiseSpec{Radial{}}.type_name(), "radial");
  EXPECT_EQ(NoiseSpec{Motion{}}.type_name(), "motion");
  EXPECT_EQ(NoiseSpec{EdgePermutation{}}.type_name(), "edge_permutation");
  EXPECT_EQ(NoiseSpec{EdgeGaussian{}}.type_name(), "edge_gaussian");
  EXPECT_THROW(NoiseSpec{Gaussian{-1.0}}.validate(), ParameterError);
  EXPECT_THROW((NoiseSpec{Axial{0.0, 0.0}}.validate()), ParameterError);
  EXPECT_THROW((NoiseSpec{EdgePermutation{2.0, 0, 0.05}}.validate()), ParameterError);
  EXPECT_THROW((NoiseSpec{EdgeGaussian{2.0, 0.1, 1.0}}.validate()), ParameterError);
}

TEST(Spec, GetSetParameter) {
  NoiseSpec s{EdgePermutation{}};
  set_parameter(s, "r_p_px", 4.0);
  set_parameter(s, "sigma_g_px", 7.5);
  EXPECT_EQ(get_parameter(s, "r_p_px"), 4.0);
  EXPECT_EQ(get_parameter(s, "sigma_g_px"), 7.5);
  EXPECT_THROW(set_parameter(s, "r_p_px", 2.5), ParameterError);
  EXPECT_THROW(get_parameter(s, "sigma_m"), ParameterError);
  NoiseSpec a{Axial{}};
  set_parameter(a, "d_level", 0.2);
  EXPECT_EQ(std::get<Axial>(a.model).d_level, 0.2);
}

TEST(Chain, EmptyIsRejected) {
  EXPECT_THROW(apply_chain_frame(flat_frame(8, 8, 1.0f), {}, 0), ParameterError);
}

TEST(Chain, ZeroLimitParametersGiveIdentity) {
  const auto f = ramp_frame(16, 12);
  const NoiseChain chain{{Gaussian{1e-12}, 1}, {Motion{0.3}, 2}, {Radial{1e-12}, 3}};
  EXPECT_EQ(apply_chain_frame(f, chain, 0), f);
}

TEST(Chain, StreamIsSeedSpecIndexFrame) {
  const auto f = ramp_frame(16, 12);
  const NoiseChain chain{{Gaussian{0.1}, 7}, {Gaussian{0.2}, 9}};
  const auto expected =
      apply_gaussian(apply_gaussian(f, 0.1, CounterStream(7, 0, 5)), 0.2, CounterStream(9, 1, 5));
  EXPECT_EQ(apply_chain_frame(f, chain, 5), expected);
}

TEST(Chain, ThreadCountDoesNotChangeOutput) {
  DepthVideo v;
  for (int t = 0; t < 7; ++t) v.frames.push_back(step_frame(40, 30, 10 + t, 1.0f, 2.0f));
  const NoiseChain chain{{Motion{2.0}, 1}, {EdgeGaussian{3.0, 0.2, 0.05}, 2}, {EdgePermutation{2.0, 2, 0.05}, 3}};
  EXPECT_EQ(apply_chain(v, chain, 1), apply_chain(v, chain, 4));
}

TEST(Additive, FrameMeanWithinFourSigmaOverSqrtN) {
  const auto f = flat_frame(200, 150, 1.0f);
  const double n = 200.0 * 150.0;
  auto mean_diff = [&](const DepthFrame& out) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += static_cast<double>(out.depth[i]) - f.depth[i];
    return s / n;
  };
  const CounterStream rng(11, 0, 0);
  EXPECT_LT(std::abs(mean_diff(apply_gaussian(f, 0.05, rng))), 4.0 * 0.05 / std::sqrt(n));
  EXPECT_LT(std::abs(mean_diff(apply_axial(f, 0.0, 0.2, rng))), 4.0 * 0.04 / std::sqrt(n));
  EXPECT_LT(std::abs(mean_diff(apply_radial(f, 0.05, rng))), 4.0 * 0.05 / std::sqrt(n));
  const auto step = step_frame(200, 150, 100, 1.0f, 2.0f);
  const auto out = apply_edge_gaussian(step, {4.0, 0.05, 0.05}, rng);
  const auto mask = edge_aoe(step, 4.0, 0.05);
  double s = 0.0, bound = 0.0;
  for (std::size_t i = 0; i < step.size(); ++i) {
    s += static_cast<double>(out.depth[i]) - step.depth[i];
    bound += static_cast<double>(mask.values[i]) * mask.values[i] * 0.05 * 0.05;
  }
  EXPECT_LT(std::abs(s), 4.0 * std::sqrt(bound));
}

}  // namespace
}  // namespace respsim::noise
