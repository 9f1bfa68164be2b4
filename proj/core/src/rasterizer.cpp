#include <algorithm>
#include <cmath>

#include "respsim/scene.hpp"

namespace respsim::scene {

namespace {

constexpr double kNearPlane = 1e-6;

struct ScreenVertex {
  double x, y, inv_z;
};

inline double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

DepthFrame render_frame(const CameraMesh& mesh, const CameraIntrinsics& k, float background_m) {
  DepthFrame frame(k.width_px, k.height_px, background_m);
  // Depth buffer in double; the frame gets the rounded winner.
  std::vector<double> zbuf(frame.size(), static_cast<double>(background_m));
  const double cx = k.principal_x();
  const double cy = k.principal_y();

  for (const Triangle& tri : mesh.triangles) {
    ScreenVertex sv[3];
    bool visible = true;
    for (int i = 0; i < 3; ++i) {
      const Vec3& v = mesh.vertices[tri[static_cast<std::size_t>(i)]];
      if (!(v.z > kNearPlane)) {
        visible = false;
        break;
      }
      sv[i] = {k.focal_px * v.x / v.z + cx, k.focal_px * v.y / v.z + cy, 1.0 / v.z};
    }
    if (!visible) continue;
    const double area = edge(sv[0], sv[1], sv[2].x, sv[2].y);
    if (std::abs(area) < 1e-12) continue;
    const double sign = area > 0.0 ? 1.0 : -1.0;
    const double tol = 1e-9 * std::abs(area) + 1e-12;

    const double min_x = std::min({sv[0].x, sv[1].x, sv[2].x});
    const double max_x = std::max({sv[0].x, sv[1].x, sv[2].x});
    const double min_y = std::min({sv[0].y, sv[1].y, sv[2].y});
    const double max_y = std::max({sv[0].y, sv[1].y, sv[2].y});
    const int x0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
    const int x1 = std::min(k.width_px - 1, static_cast<int>(std::ceil(max_x - 0.5)));
    const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
    const int y1 = std::min(k.height_px - 1, static_cast<int>(std::ceil(max_y - 0.5)));
    if (x0 > x1 || y0 > y1) continue;

    for (int y = y0; y <= y1; ++y) {
      const double py = y + 0.5;
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5;
        const double w0 = sign * edge(sv[1], sv[2], px, py);
        const double w1 = sign * edge(sv[2], sv[0], px, py);
        const double w2 = sign * edge(sv[0], sv[1], px, py);
        if (w0 < -tol || w1 < -tol || w2 < -tol) continue;
        const double sum = w0 + w1 + w2;
        // Screen-space barycentrics interpolate 1/Z exactly under perspective.
        const double inv_z = (w0 * sv[0].inv_z + w1 * sv[1].inv_z + w2 * sv[2].inv_z) / sum;
        const double z = 1.0 / inv_z;
        const std::size_t idx = static_cast<std::size_t>(y) * k.width_px + x;
        if (z < zbuf[idx]) {
          zbuf[idx] = z;
          frame.depth[idx] = static_cast<float>(z);
        }
      }
    }
  }
  return frame;
}

}  // namespace respsim::scene
