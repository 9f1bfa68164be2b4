#include "respsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "respsim/error.hpp"
#include "respsim/parallel.hpp"

namespace respsim {

void DepthVideo::validate() const {
  if (frames.empty()) throw ParameterError("video has no frames");
  if (!(frame_rate_hz > 0.0)) throw ParameterError("video frame rate must be > 0");
  const int w = frames.front().width;
  const int h = frames.front().height;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const DepthFrame& f = frames[t];
    if (f.width != w || f.height != h ||
        f.depth.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
      throw ParameterError("frame " + std::to_string(t) + " does not match the video dimensions");
    }
  }
}

}  // namespace respsim

namespace respsim::scene {

void CameraIntrinsics::validate() const {
  if (width_px < 8 || height_px < 8) throw ParameterError("image must be at least 8x8 pixels");
  if (!(focal_px > 0.0)) throw ParameterError("focal_px must be > 0");
  const double px = principal_x();
  const double py = principal_y();
  if (!(px >= 0.0 && px <= width_px && py >= 0.0 && py <= height_px)) {
    throw ParameterError("principal point must lie inside the image");
  }
}

namespace {

double surface_angle(const TorsoScene& s, int i) {
  return -std::numbers::pi / 2.0 + std::numbers::pi * i / (s.n_u - 1);
}

double surface_height(const TorsoScene& s, int j) {
  return -s.height_m / 2.0 + s.height_m * j / (s.n_v - 1);
}

void check_geometry(const TorsoScene& s) {
  if (s.n_u < 2 || s.n_v < 2) throw ParameterError("tessellation needs n_u >= 2 and n_v >= 2");
  if (!(s.half_width_m > 0.0 && s.half_depth_m > 0.0 && s.height_m > 0.0)) {
    throw ParameterError("torso dimensions must be > 0");
  }
  if (!(s.chest.radius_x_m > 0.0 && s.chest.radius_z_m > 0.0)) {
    throw ParameterError("chest region radii must be > 0");
  }
}

}  // namespace

Vec3 TorsoScene::chest_apex() const {
  const double s = std::clamp(chest.center_x_m / half_width_m, -1.0, 1.0);
  const double phi = std::asin(s);
  return {half_width_m * s, half_depth_m * std::cos(phi), chest.center_z_m};
}

void TorsoScene::validate() const {
  check_geometry(*this);
  intrinsics.validate();
  if (std::abs(motion_dir.norm() - 1.0) > 1e-12) throw ParameterError("motion_dir must have unit norm");
  if (!(amplitude_m > 0.0)) throw ParameterError("amplitude_m must be > 0");
  if (!(camera_distance_m > 0.0)) throw ParameterError("camera_distance_m must be > 0");
  std::size_t count = 0;
  for (int j = 0; j < n_v; ++j) {
    for (int i = 0; i < n_u; ++i) {
      if (chest.contains(half_width_m * std::sin(surface_angle(*this, i)), surface_height(*this, j))) ++count;
    }
  }
  if (count < 3) throw ParameterError("chest region selects fewer than 3 vertices");
}

double displacement_weight(double d, double d_max, std::size_t* clamped) {
  if (d > d_max) {
    if (clamped) ++*clamped;
    return 0.0;
  }
  if (d_max <= 0.0) return 1.0;
  const double r = 1.0 - d / d_max;
  return r * r;
}

TorsoMesh build_torso(const TorsoScene& scene) {
  check_geometry(scene);
  TorsoMesh mesh;
  const auto nu = static_cast<std::size_t>(scene.n_u);
  const auto nv = static_cast<std::size_t>(scene.n_v);
  mesh.rest.reserve(nu * nv);
  mesh.in_chest.reserve(nu * nv);
  for (int j = 0; j < scene.n_v; ++j) {
    const double z = surface_height(scene, j);
    for (int i = 0; i < scene.n_u; ++i) {
      const double phi = surface_angle(scene, i);
      const Vec3 p{scene.half_width_m * std::sin(phi), scene.half_depth_m * std::cos(phi), z};
      mesh.rest.push_back(p);
      mesh.in_chest.push_back(scene.chest.contains(p.x, p.z));
    }
  }

  Vec3 sum;
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) {
    if (!mesh.in_chest[v]) continue;
    sum = sum + mesh.rest[v];
    ++mesh.chest_vertex_count;
  }
  if (mesh.chest_vertex_count == 0) throw ParameterError("chest region selects no vertices");
  mesh.centroid = (1.0 / static_cast<double>(mesh.chest_vertex_count)) * sum;
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) {
    if (mesh.in_chest[v]) mesh.d_max = std::max(mesh.d_max, (mesh.rest[v] - mesh.centroid).norm());
  }
  mesh.weight.resize(mesh.rest.size(), 0.0);
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) {
    if (mesh.in_chest[v]) {
      mesh.weight[v] = displacement_weight((mesh.rest[v] - mesh.centroid).norm(), mesh.d_max,
                                           &mesh.clamped_weights);
    }
  }

  mesh.triangles.reserve(2 * (nu - 1) * (nv - 1));
  for (std::size_t j = 0; j + 1 < nv; ++j) {
    for (std::size_t i = 0; i + 1 < nu; ++i) {
      const auto v00 = static_cast<std::uint32_t>(j * nu + i);
      const auto v10 = static_cast<std::uint32_t>(j * nu + i + 1);
      const auto v01 = static_cast<std::uint32_t>((j + 1) * nu + i);
      const auto v11 = static_cast<std::uint32_t>((j + 1) * nu + i + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

Vec3 body_to_camera(const TorsoScene& scene, Vec3 p) {
  const Vec3 apex = scene.chest_apex();
  const Vec3 cam{apex.x, apex.y + scene.camera_distance_m, apex.z};
  return {-(p.x - cam.x), -(p.z - cam.z), cam.y - p.y};
}

CameraMesh pose_mesh(const TorsoScene& scene, const TorsoMesh& mesh, double driver_value) {
  CameraMesh out;
  out.triangles = mesh.triangles;
  out.vertices.reserve(mesh.rest.size());
  const double gain = driver_value * scene.amplitude_m;
  for (std::size_t v = 0; v < mesh.rest.size(); ++v) {
    const Vec3 p = mesh.rest[v] + (gain * mesh.weight[v]) * scene.motion_dir;
    out.vertices.push_back(body_to_camera(scene, p));
  }
  return out;
}

std::array<double, 2> apex_pixel(const TorsoScene& scene) {
  const Vec3 c = body_to_camera(scene, scene.chest_apex());
  const auto& k = scene.intrinsics;
  return {k.focal_px * c.x / c.z + k.principal_x(), k.focal_px * c.y / c.z + k.principal_y()};
}

DepthVideo animate(const TorsoScene& scene, const signals::RespSignal& driver, double frame_rate_hz,
                   unsigned threads) {
  scene.validate();
  driver.validate();
  if (driver.samples.size() < 2) throw ParameterError("driver must span at least 2 frames");
  if (std::abs(driver.sample_rate_hz - frame_rate_hz) > 1e-9 * frame_rate_hz) {
    throw ParameterError("driver rate " + std::to_string(driver.sample_rate_hz) +
                         " Hz does not match the frame rate " + std::to_string(frame_rate_hz) +
                         " Hz; resample first");
  }
  const TorsoMesh mesh = build_torso(scene);
  DepthVideo video;
  video.frame_rate_hz = frame_rate_hz;
  video.background_m = static_cast<float>(scene.background_depth_m());
  video.frames.resize(driver.samples.size());
  parallel_for(video.frames.size(), threads, [&](std::size_t t) {
    video.frames[t] = render_frame(pose_mesh(scene, mesh, driver.samples[t]), scene.intrinsics,
                                   video.background_m);
  });
  return video;
}

}  // namespace respsim::scene
