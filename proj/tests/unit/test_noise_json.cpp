#include <gtest/gtest.h>

#include "respsim/error.hpp"
#include "respsim/noise.hpp"

namespace respsim::noise {
namespace {

using nlohmann::json;

std::string error_of(const json& j) {
  try {
    chain_from_json(j);
  } catch (const ParameterError& e) {
    return e.what();
  }
  return {};
}

TEST(NoiseJson, RoundTripEveryModel) {
  const NoiseChain chain{{Gaussian{0.02}, 1},         {Axial{0.5, 0.1}, 2},
                         {Radial{0.03}, 3},           {Motion{4.0}, 4},
                         {EdgePermutation{8.0, 3, 0.1}, 5}, {EdgeGaussian{16.0, 0.1, 0.05}, 6}};
  const json j = to_json(chain);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[4]["r_p_px"], 3);
  const NoiseChain back = chain_from_json(j);
  ASSERT_EQ(back.size(), chain.size());
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back[5].seed, 6u);
}

TEST(NoiseJson, SingleObjectAndEmptyArray) {
  const auto one = chain_from_json(json{{"type", "gaussian"}, {"sigma_m", 0.1}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].seed, 0u);
  EXPECT_TRUE(chain_from_json(json::array()).empty());
}

TEST(NoiseJson, DefaultsForThreshold) {
  const auto s = spec_from_json(json{{"type", "edge_gaussian"}, {"sigma_g_px", 2}, {"sigma_m", 0.1}});
  EXPECT_EQ(std::get<EdgeGaussian>(s.model).aoe_threshold, 0.05);
}

TEST(NoiseJson, ErrorsCarryPaths) {
  EXPECT_NE(error_of(json{{"type", "bogus"}}).find("noise.type: unknown noise model 'bogus'"), std::string::npos);
  EXPECT_NE(error_of(json::array({json{{"type", "gaussian"}, {"sigma_m", 0.1}}, json{{"type", "gaussian"}}}))
                .find("noise[1].sigma_m: required field is missing"),
            std::string::npos);
  EXPECT_NE(error_of(json{{"type", "gaussian"}, {"sigma_m", 0.1}, {"sigmaa", 1}}).find("noise.sigmaa: unknown key"),
            std::string::npos);
  EXPECT_NE(error_of(json{{"type", "edge_permutation"}, {"sigma_g_px", 2}, {"r_p_px", 1.5}}).find("r_p_px"),
            std::string::npos);
  EXPECT_NE(error_of(json{{"type", "gaussian"}, {"sigma_m", -1}}).find("sigma_m"), std::string::npos);
  EXPECT_NE(error_of(json{{"type", "gaussian"}, {"sigma_m", 1}, {"seed", -3}}).find("noise.seed"), std::string::npos);
  EXPECT_NE(error_of(json{{"sigma_m", 1}}).find("noise.type"), std::string::npos);
  EXPECT_NE(error_of(json{{"type", "gaussian"}, {"sigma_m", "big"}}).find("expected a number"), std::string::npos);
  EXPECT_FALSE(error_of(json(3)).empty());
}

}  // namespace
}  // namespace respsim::noise
