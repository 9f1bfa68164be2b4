#include "respsim/extract.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "respsim/error.hpp"
#include "respsim/parallel.hpp"

namespace respsim::extract {

namespace {

int scaled_dim(int dim, double scale) {
  return std::max(1, static_cast<int>(std::floor(dim * scale + 1e-9)));
}

std::vector<int> source_index(int out_dim, int in_dim, double scale) {
  std::vector<int> idx(static_cast<std::size_t>(out_dim));
  for (int i = 0; i < out_dim; ++i) {
    idx[i] = std::min(in_dim - 1, static_cast<int>(std::floor((i + 0.5) / scale)));
  }
  return idx;
}

void check_scale(double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ParameterError("RoI scale must be in (0, 1], got " + std::to_string(scale));
  }
}

}  // namespace

std::array<int, 2> RoiSpec::scaled_size() const {
  return {scaled_dim(width_px, scale), scaled_dim(height_px, scale)};
}

void RoiSpec::validate_for(int width, int height) const {
  if (width_px < 1 || height_px < 1) throw ParameterError("RoI size must be at least 1x1");
  check_scale(scale);
  if (x0 < 0) throw ParameterError("RoI left edge x0=" + std::to_string(x0) + " is outside the frame");
  if (y0 < 0) throw ParameterError("RoI top edge y0=" + std::to_string(y0) + " is outside the frame");
  if (x0 + width_px > width) {
    throw ParameterError("RoI right edge x0+width=" + std::to_string(x0 + width_px) +
                         " exceeds the frame width " + std::to_string(width));
  }
  if (y0 + height_px > height) {
    throw ParameterError("RoI bottom edge y0+height=" + std::to_string(y0 + height_px) +
                         " exceeds the frame height " + std::to_string(height));
  }
}

Region crop(const DepthFrame& frame, const RoiSpec& roi) {
  roi.validate_for(frame.width, frame.height);
  Region r{roi.width_px, roi.height_px, {}};
  r.values.reserve(static_cast<std::size_t>(r.width) * r.height);
  for (int y = 0; y < r.height; ++y) {
    const auto* row = frame.depth.data() + static_cast<std::size_t>(roi.y0 + y) * frame.width + roi.x0;
    r.values.insert(r.values.end(), row, row + r.width);
  }
  return r;
}

Region rescale_nn(const Region& region, double scale) {
  check_scale(scale);
  if (scale == 1.0) return region;
  Region out{scaled_dim(region.width, scale), scaled_dim(region.height, scale), {}};
  const auto xs = source_index(out.width, region.width, scale);
  const auto ys = source_index(out.height, region.height, scale);
  out.values.reserve(static_cast<std::size_t>(out.width) * out.height);
  for (int y : ys) {
    for (int x : xs) out.values.push_back(region.at(x, y));
  }
  return out;
}

double region_mean(const Region& region) {
  if (region.values.empty()) throw ParameterError("empty region");
  double sum = 0.0;
  for (float v : region.values) sum += v;
  return sum / static_cast<double>(region.values.size());
}

double roi_mean(const DepthFrame& frame, const RoiSpec& roi) {
  roi.validate_for(frame.width, frame.height);
  const auto [w, h] = roi.scaled_size();
  const auto xs = source_index(w, roi.width_px, roi.scale);
  const auto ys = source_index(h, roi.height_px, roi.scale);
  double sum = 0.0;
  for (int y : ys) {
    const auto* row = frame.depth.data() + static_cast<std::size_t>(roi.y0 + y) * frame.width + roi.x0;
    for (int x : xs) sum += row[x];
  }
  return sum / (static_cast<double>(w) * h);
}

signals::RespSignal extract_signal(const DepthVideo& video, const RoiSpec& roi, unsigned threads) {
  video.validate();
  roi.validate_for(video.width(), video.height());
  signals::RespSignal s;
  s.sample_rate_hz = video.frame_rate_hz;
  s.kind = signals::SignalKind::recorded;
  s.samples.resize(video.frames.size());
  parallel_for(video.frames.size(), threads, [&](std::size_t t) { s.samples[t] = roi_mean(video.frames[t], roi); });
  return s;
}

RoiSpec default_roi(const scene::TorsoScene& scene, int width_px, int height_px) {
  const auto apex = scene::apex_pixel(scene);
  RoiSpec roi;
  roi.width_px = width_px;
  roi.height_px = height_px;
  roi.x0 = static_cast<int>(std::lround(apex[0] - width_px / 2.0));
  roi.y0 = static_cast<int>(std::lround(apex[1] - height_px / 2.0));
  return roi;
}

int foreground_margin(const DepthFrame& frame, const RoiSpec& roi, float background_m) {
  roi.validate_for(frame.width, frame.height);
  int best = std::max(frame.width, frame.height);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      if (frame.at(x, y) < background_m) continue;
      const int dx = std::max({roi.x0 - x, x - (roi.x0 + roi.width_px - 1), 0});
      const int dy = std::max({roi.y0 - y, y - (roi.y0 + roi.height_px - 1), 0});
      const int d = std::max(dx, dy);
      if (d == 0) return -1;
      best = std::min(best, d - 1);
    }
  }
  return best;
}

}  // namespace respsim::extract
