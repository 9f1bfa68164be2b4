#pragma once

#include <cstddef>
#include <vector>

namespace respsim {

/// Row-major depth image in metres along the optical axis.
struct DepthFrame {
  int width = 0;
  int height = 0;
  std::vector<float> depth;

  DepthFrame() = default;
  DepthFrame(int w, int h, float fill = 0.0f)
      : width(w), height(h), depth(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  std::size_t size() const noexcept { return depth.size(); }
  float& at(int x, int y) { return depth[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return depth[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const DepthFrame&, const DepthFrame&) = default;
};

/// Sequence of equally sized frames. Pixels that miss the subject carry
/// `background_m`, the depth of a flat backdrop plane.
struct DepthVideo {
  std::vector<DepthFrame> frames;
  double frame_rate_hz = 30.0;
  float background_m = 0.0f;

  int width() const noexcept { return frames.empty() ? 0 : frames.front().width; }
  int height() const noexcept { return frames.empty() ? 0 : frames.front().height; }
  /// Throws ParameterError when empty, ragged or the rate is not positive.
  void validate() const;

  friend bool operator==(const DepthVideo&, const DepthVideo&) = default;
};

}  // namespace respsim
