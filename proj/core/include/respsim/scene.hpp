#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "respsim/depth.hpp"
#include "respsim/signals.hpp"

namespace respsim::scene {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 normalized(Vec3 v) { return (1.0 / v.norm()) * v; }

/// Pinhole camera. Pixel (i, j) has its centre at image coordinates (i + 0.5, j + 0.5).
struct CameraIntrinsics {
  int width_px = 640;
  int height_px = 480;
  double focal_px = 525.0;
  std::optional<double> cx;  ///< defaults to width / 2
  std::optional<double> cy;  ///< defaults to height / 2

  double principal_x() const { return cx.value_or(width_px / 2.0); }
  double principal_y() const { return cy.value_or(height_px / 2.0); }
  void validate() const;
};

/// Ellipse on the torso front, in body-frame lateral (x) and superior (z) metres.
struct ChestRegion {
  double center_x_m = 0.0;
  double center_z_m = 0.12;
  double radius_x_m = 0.13;
  double radius_z_m = 0.12;

  bool contains(double x, double z) const {
    const double u = (x - center_x_m) / radius_x_m;
    const double v = (z - center_z_m) / radius_z_m;
    return u * u + v * v <= 1.0;
  }
};

/// Frontally viewed elliptic-cylinder torso.
///
/// Body frame: x lateral, y anterior (toward the camera), z superior. The
/// camera sits on the anterior axis through the chest apex (the front surface
/// point at the chest-region centre) at `camera_distance_m`.
struct TorsoScene {
  double half_width_m = 0.18;   ///< lateral half axis
  double half_depth_m = 0.12;   ///< anteroposterior half axis
  double height_m = 0.6;
  int n_u = 128;                ///< vertices around the front half
  int n_v = 128;                ///< vertices along the height
  ChestRegion chest;
  Vec3 motion_dir = normalized({0.0, 2.0 / 3.0, 1.0 / 3.0});
  double amplitude_m = 0.01;    ///< peak-to-peak excursion for a [0, 1] driver
  double camera_distance_m = 0.45;
  CameraIntrinsics intrinsics;

  /// Flat backdrop depth used for pixels that miss the torso.
  double background_depth_m() const { return camera_distance_m + 1.0; }
  /// Rest-pose front surface point at the chest-region centre.
  Vec3 chest_apex() const;
  /// Full check including the >= 3 chest vertex requirement.
  void validate() const;
};

/// (1 - d / d_max)^2 for 0 <= d <= d_max. d > d_max yields 0 and increments
/// `clamped` when supplied. d_max == 0 gives weight 1 at d == 0.
double displacement_weight(double d, double d_max, std::size_t* clamped = nullptr);

using Triangle = std::array<std::uint32_t, 3>;

struct TorsoMesh {
  std::vector<Vec3> rest;            ///< body-frame rest positions
  std::vector<double> weight;        ///< per-vertex displacement weight
  std::vector<bool> in_chest;
  std::vector<Triangle> triangles;
  Vec3 centroid;                     ///< centre of gravity of the chest vertices
  double d_max = 0.0;
  std::size_t chest_vertex_count = 0;
  std::size_t clamped_weights = 0;   ///< chest vertices beyond d_max (diagnostic)
};

/// Tessellate the torso and weight the chest-region vertices by their
/// Euclidean distance to the chest centroid.
TorsoMesh build_torso(const TorsoScene& scene);

/// Triangle mesh in camera coordinates (X right, Y down, Z forward, metres).
struct CameraMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
};

/// Body-frame to camera-frame transform for `scene`.
Vec3 body_to_camera(const TorsoScene& scene, Vec3 p);

/// Mesh posed for a driver value (0 = rest) in camera coordinates.
CameraMesh pose_mesh(const TorsoScene& scene, const TorsoMesh& mesh, double driver_value);

/// Perspective z-buffer rasterisation; nearest surface wins, uncovered pixels
/// get `background_m`.
DepthFrame render_frame(const CameraMesh& mesh, const CameraIntrinsics& intrinsics, float background_m);

/// Render one frame per driver sample. The driver must be sampled at
/// `frame_rate_hz` and hold at least 2 samples.
DepthVideo animate(const TorsoScene& scene, const signals::RespSignal& driver,
                   double frame_rate_hz = 30.0, unsigned threads = 1);

/// Image position (continuous coordinates) of the chest apex.
std::array<double, 2> apex_pixel(const TorsoScene& scene);

}  // namespace respsim::scene
