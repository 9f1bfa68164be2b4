#include <gtest/gtest.h>

#include <cmath>

#include "respsim/error.hpp"
#include "respsim/extract.hpp"
#include "respsim/scene.hpp"
#include "test_support.hpp"

namespace respsim::scene {
namespace {

TEST(DisplacementWeight, Formula) {
  EXPECT_EQ(displacement_weight(0.0, 2.0), 1.0);
  EXPECT_EQ(displacement_weight(2.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(displacement_weight(1.0, 2.0), 0.25);
  EXPECT_EQ(displacement_weight(0.0, 0.0), 1.0);
}

TEST(DisplacementWeight, BeyondMaxIsClampedAndCounted) {
  std::size_t clamped = 0;
  EXPECT_EQ(displacement_weight(3.0, 2.0, &clamped), 0.0);
  EXPECT_EQ(clamped, 1u);
  EXPECT_EQ(displacement_weight(1.0, 2.0, &clamped), 0.25);
  EXPECT_EQ(clamped, 1u);
}

TEST(BuildTorso, SingleVertexRegion) {
  TorsoScene s;
  s.n_u = 5;
  s.n_v = 5;
  s.chest = {0.0, 0.0, 0.01, 0.01};
  const auto mesh = build_torso(s);
  ASSERT_EQ(mesh.chest_vertex_count, 1u);
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) EXPECT_EQ(mesh.weight[v], v == 12 ? 1.0 : 0.0) << v;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(BuildTorso, WeightsInUnitIntervalAndOnlyInChest) {
  const auto mesh = build_torso(TorsoScene{});
  EXPECT_EQ(mesh.rest.size(), 128u * 128u);
  EXPECT_EQ(mesh.triangles.size(), 2u * 127u * 127u);
  EXPECT_EQ(mesh.clamped_weights, 0u);
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) {
    EXPECT_GE(mesh.weight[v], 0.0);
    EXPECT_LE(mesh.weight[v], 1.0);
    if (!mesh.in_chest[v]) EXPECT_EQ(mesh.weight[v], 0.0);
  }
}

TEST(BuildTorso, DegenerateTessellation) {
  TorsoScene s;
  s.n_u = 1;
  EXPECT_THROW(build_torso(s), ParameterError);
  s = TorsoScene{};
  s.n_v = 1;
  EXPECT_THROW(build_torso(s), ParameterError);
}

TEST(Scene, ValidateRejectsBadValues) {
  auto bad = [](auto mutate) {
    TorsoScene s;
    mutate(s);
    EXPECT_THROW(s.validate(), ParameterError);
  };
  bad([](TorsoScene& s) { s.amplitude_m = 0.0; });
  bad([](TorsoScene& s) { s.camera_distance_m = -1.0; });
  bad([](TorsoScene& s) { s.motion_dir = {0.0, 2.0, 0.0}; });
  bad([](TorsoScene& s) { s.intrinsics.width_px = 4; });
  bad([](TorsoScene& s) { s.intrinsics.focal_px = 0.0; });
  bad([](TorsoScene& s) { s.intrinsics.cx = -3.0; });
  bad([](TorsoScene& s) { s.half_depth_m = 0.0; });
  EXPECT_NO_THROW(TorsoScene{}.validate());
}

TEST(Scene, ApexProjectsToImageCentre) {
  const auto px = apex_pixel(TorsoScene{});
  EXPECT_NEAR(px[0], 320.0, 1e-9);
  EXPECT_NEAR(px[1], 240.0, 1e-9);
  EXPECT_DOUBLE_EQ(TorsoScene{}.background_depth_m(), 1.45);
}

TEST(Animate, ConstantZeroGivesIdenticalFrames) {
  const auto scene = test::small_scene();
  const signals::RespSignal driver{std::vector<double>(5, 0.0), 30.0};
  const auto video = animate(scene, driver, 30.0, 2);
  ASSERT_EQ(video.frames.size(), 5u);
  for (const auto& f : video.frames) EXPECT_EQ(f, video.frames.front());
  EXPECT_EQ(video.width(), 160);
  EXPECT_EQ(video.height(), 120);
}

TEST(Animate, ThreadCountDoesNotChangeFrames) {
  const auto scene = test::small_scene();
  const auto driver = test::clean_driver(0.25, 2.0);
  EXPECT_EQ(animate(scene, driver, 30.0, 1), animate(scene, driver, 30.0, 3));
}

TEST(Animate, BackgroundAndNearestSurface) {
  const auto scene = test::small_scene();
  const auto video = animate(scene, signals::RespSignal{{0.0, 0.0}, 30.0}, 30.0);
  const auto& f = video.frames.front();
  EXPECT_EQ(f.at(0, 0), static_cast<float>(scene.background_depth_m()));
  const float centre = f.at(80, 60);
  EXPECT_NEAR(centre, scene.camera_distance_m, 2e-3);
  for (float z : f.depth) EXPECT_GE(z, centre - 1e-6f);
}

TEST(Animate, Errors) {
  const auto scene = test::small_scene();
  EXPECT_THROW(animate(scene, signals::RespSignal{{0.0}, 30.0}), ParameterError);
  EXPECT_THROW(animate(scene, signals::RespSignal{{0.0, 1.0}, 25.0}, 30.0), ParameterError);
}

TEST(Animate, DefaultThirtySecondsIsNineHundredFrames) {
  auto scene = test::small_scene();
  const auto video = animate(scene, test::clean_driver(), 30.0);
  EXPECT_EQ(video.frames.size(), 900u);
}

TEST(RenderFrame, EmptyMeshIsBackground) {
  CameraIntrinsics k;
  k.width_px = 16;
  k.height_px = 8;
  const auto f = render_frame({}, k, 2.0f);
  for (float z : f.depth) EXPECT_EQ(z, 2.0f);
}

TEST(RenderFrame, SingleTriangleCoversCentre) {
  CameraIntrinsics k;
  k.width_px = 20;
  k.height_px = 20;
  k.focal_px = 10.0;
  CameraMesh m;
  m.vertices = {{-1.0, -1.0, 1.0}, {1.0, -1.0, 1.0}, {0.0, 1.0, 1.0}};
  m.triangles = {{0, 1, 2}};
  const auto f = render_frame(m, k, 5.0f);
  EXPECT_FLOAT_EQ(f.at(10, 10), 1.0f);
  EXPECT_EQ(f.at(0, 19), 5.0f);
}

TEST(DefaultRoi, CentredOnApex) {
  const auto roi = extract::default_roi(TorsoScene{});
  EXPECT_EQ(roi.x0, 180);
  EXPECT_EQ(roi.y0, 137);
  EXPECT_EQ(roi.width_px, 280);
  EXPECT_EQ(roi.height_px, 206);
}

}  // namespace
}  // namespace respsim::scene
