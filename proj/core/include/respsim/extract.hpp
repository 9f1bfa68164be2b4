#pragma once

#include <array>
#include <vector>

#include "respsim/depth.hpp"
#include "respsim/scene.hpp"
#include "respsim/signals.hpp"

namespace respsim::extract {

/// Chest region of interest in full-resolution pixel coordinates.
struct RoiSpec {
  int x0 = 0;
  int y0 = 0;
  int width_px = 280;
  int height_px = 206;
  double scale = 1.0;

  /// Rescaled size: floor(dim * scale), at least 1.
  std::array<int, 2> scaled_size() const;
  /// Throws ParameterError naming the violated edge when the RoI leaves a
  /// width x height frame, or when the size or scale is invalid.
  void validate_for(int width, int height) const;
};

/// Rectangular block of depth samples.
struct Region {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

Region crop(const DepthFrame& frame, const RoiSpec& roi);

/// Nearest-neighbour rescale: out(i, j) = in(floor((i + 0.5) / scale), floor((j + 0.5) / scale)).
Region rescale_nn(const Region& region, double scale);

/// Row-major sequential mean in double precision.
double region_mean(const Region& region);

/// Mean of the cropped and rescaled RoI of one frame (same result as
/// region_mean(rescale_nn(crop(frame, roi), roi.scale))).
double roi_mean(const DepthFrame& frame, const RoiSpec& roi);

/// One RoI mean per frame, at the video frame rate, in metres.
signals::RespSignal extract_signal(const DepthVideo& video, const RoiSpec& roi, unsigned threads = 1);

/// RoI of the given size centred on the projected chest apex.
RoiSpec default_roi(const scene::TorsoScene& scene, int width_px = 280, int height_px = 206);

/// Foreground pixels separating the RoI from the nearest background pixel of
/// `frame` (Chebyshev distance minus one); -1 when background lies inside the RoI.
int foreground_margin(const DepthFrame& frame, const RoiSpec& roi, float background_m);

}  // namespace respsim::extract
