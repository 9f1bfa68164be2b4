#include <algorithm>
#include <cmath>
#include <string>

#include "respsim/error.hpp"
#include "respsim/noise.hpp"
#include "noise_internal.hpp"
#include "respsim/parallel.hpp"

namespace respsim::noise {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

std::string_view NoiseSpec::type_name() const {
  return std::visit(overloaded{
                        [](const Gaussian&) { return std::string_view("gaussian"); },
                        [](const Axial&) { return std::string_view("axial"); },
                        [](const Radial&) { return std::string_view("radial"); },
                        [](const Motion&) { return std::string_view("motion"); },
                        [](const EdgePermutation&) { return std::string_view("edge_permutation"); },
                        [](const EdgeGaussian&) { return std::string_view("edge_gaussian"); },
                    },
                    model);
}

void NoiseSpec::validate() const {
  std::visit(overloaded{
                 [](const Gaussian& m) { require(m.sigma_m > 0.0, "gaussian.sigma_m must be > 0"); },
                 [](const Axial& m) {
                   require(std::isfinite(m.d_offset_m), "axial.d_offset_m must be finite");
                   require(m.d_level > 0.0, "axial.d_level must be > 0");
                 },
                 [](const Radial& m) { require(m.sigma_m > 0.0, "radial.sigma_m must be > 0"); },
                 [](const Motion& m) {
                   require(m.max_shift_px > 0.0 && std::isfinite(m.max_shift_px),
                           "motion.max_shift_px must be > 0");
                 },
                 [](const EdgePermutation& m) {
                   require(m.sigma_g_px > 0.0, "edge_permutation.sigma_g_px must be > 0");
                   require(m.r_p_px >= 1, "edge_permutation.r_p_px must be >= 1");
                   require(m.aoe_threshold > 0.0 && m.aoe_threshold < 1.0,
                           "edge_permutation.aoe_threshold must be in (0, 1)");
                 },
                 [](const EdgeGaussian& m) {
                   require(m.sigma_g_px > 0.0, "edge_gaussian.sigma_g_px must be > 0");
                   require(m.sigma_m > 0.0, "edge_gaussian.sigma_m must be > 0");
                   require(m.aoe_threshold > 0.0 && m.aoe_threshold < 1.0,
                           "edge_gaussian.aoe_threshold must be in (0, 1)");
                 },
             },
             model);
}

namespace {

double* parameter_slot(NoiseSpec& spec, std::string_view name) {
  return std::visit(overloaded{
                        [&](Gaussian& m) -> double* { return name == "sigma_m" ? &m.sigma_m : nullptr; },
                        [&](Axial& m) -> double* {
                          if (name == "d_offset_m") return &m.d_offset_m;
                          return name == "d_level" ? &m.d_level : nullptr;
                        },
                        [&](Radial& m) -> double* { return name == "sigma_m" ? &m.sigma_m : nullptr; },
                        [&](Motion& m) -> double* {
                          return name == "max_shift_px" ? &m.max_shift_px : nullptr;
                        },
                        [&](EdgePermutation& m) -> double* {
                          if (name == "sigma_g_px") return &m.sigma_g_px;
                          return name == "aoe_threshold" ? &m.aoe_threshold : nullptr;
                        },
                        [&](EdgeGaussian& m) -> double* {
                          if (name == "sigma_g_px") return &m.sigma_g_px;
                          if (name == "sigma_m") return &m.sigma_m;
                          return name == "aoe_threshold" ? &m.aoe_threshold : nullptr;
                        },
                    },
                    spec.model);
}

}  // namespace

double get_parameter(const NoiseSpec& spec, std::string_view name) {
  if (const auto* p = std::get_if<EdgePermutation>(&spec.model); p && name == "r_p_px") return p->r_p_px;
  NoiseSpec copy = spec;
  const double* slot = parameter_slot(copy, name);
  if (!slot) {
    throw ParameterError("noise model '" + std::string(spec.type_name()) + "' has no parameter '" +
                         std::string(name) + "'");
  }
  return *slot;
}

void set_parameter(NoiseSpec& spec, std::string_view name, double value) {
  if (auto* p = std::get_if<EdgePermutation>(&spec.model); p && name == "r_p_px") {
    if (value != std::floor(value)) throw ParameterError("r_p_px must be an integer");
    p->r_p_px = static_cast<int>(value);
    return;
  }
  double* slot = parameter_slot(spec, name);
  if (!slot) {
    throw ParameterError("noise model '" + std::string(spec.type_name()) + "' has no parameter '" +
                         std::string(name) + "'");
  }
  *slot = value;
}

double normal_at(const CounterStream& rng, std::uint32_t tag, std::size_t index) {
  return to_normal(rng.block(static_cast<std::uint32_t>(index >> 2), tag)[index & 3u]);
}

DepthFrame apply_gaussian(const DepthFrame& frame, double sigma_m, const CounterStream& rng) {
  require(sigma_m > 0.0, "gaussian sigma_m must be > 0");
  std::vector<double> z(frame.size());
  rng.fill_normal(z, kPixelTag);
  DepthFrame out = frame;
  for (std::size_t i = 0; i < out.depth.size(); ++i) {
    out.depth[i] = static_cast<float>(static_cast<double>(frame.depth[i]) + sigma_m * z[i]);
  }
  return out;
}

DepthFrame apply_axial(const DepthFrame& frame, double d_offset_m, double d_level, const CounterStream& rng) {
  require(d_level > 0.0, "axial d_level must be > 0");
  std::vector<double> eta(frame.size());
  rng.fill_normal(eta, kPixelTag);
  DepthFrame out = frame;
  for (std::size_t i = 0; i < out.depth.size(); ++i) {
    const double z = frame.depth[i];
    const double scale = (z - d_offset_m) * d_level;
    out.depth[i] = static_cast<float>(z + eta[i] * scale * scale);
  }
  return out;
}

double radial_mask(int x, int y, int width, int height) {
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double r_corner = std::hypot(cx, cy);
  if (r_corner == 0.0) return 0.0;
  return std::hypot(x - cx, y - cy) / r_corner;
}

DepthFrame apply_radial(const DepthFrame& frame, double sigma_m, const CounterStream& rng) {
  require(sigma_m > 0.0, "radial sigma_m must be > 0");
  std::vector<double> z(frame.size());
  rng.fill_normal(z, kPixelTag);
  DepthFrame out = frame;
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * frame.width + x;
      const double m = radial_mask(x, y, frame.width, frame.height);
      out.depth[i] = static_cast<float>(static_cast<double>(frame.depth[i]) + m * sigma_m * z[i]);
    }
  }
  return out;
}

Shift draw_shift(double max_shift_px, const CounterStream& rng) {
  const long k = std::lround(max_shift_px);
  if (k <= 0) return {};
  const auto n = static_cast<std::uint32_t>(2 * k + 1);
  const auto w = rng.block(0, kShiftTag);
  return {static_cast<int>(to_bounded(w[0], n)) - static_cast<int>(k),
          static_cast<int>(to_bounded(w[1], n)) - static_cast<int>(k)};
}

DepthFrame translate(const DepthFrame& frame, Shift shift) {
  if (shift.dx == 0 && shift.dy == 0) return frame;
  DepthFrame out(frame.width, frame.height);
  for (int y = 0; y < frame.height; ++y) {
    const int sy = std::clamp(y - shift.dy, 0, frame.height - 1);
    for (int x = 0; x < frame.width; ++x) {
      const int sx = std::clamp(x - shift.dx, 0, frame.width - 1);
      out.at(x, y) = frame.at(sx, sy);
    }
  }
  return out;
}

DepthFrame apply_motion_frame(const DepthFrame& frame, double max_shift_px, const CounterStream& rng) {
  require(max_shift_px > 0.0, "motion max_shift_px must be > 0");
  const long k = std::lround(max_shift_px);
  if (k >= frame.width || k >= frame.height) {
    throw ParameterError("motion shift of " + std::to_string(k) + " px reaches the frame dimensions " +
                         std::to_string(frame.width) + "x" + std::to_string(frame.height));
  }
  return translate(frame, draw_shift(max_shift_px, rng));
}

DepthVideo apply_motion(const DepthVideo& video, double max_shift_px, std::uint64_t seed, unsigned threads) {
  return apply_chain(video, {NoiseSpec{Motion{max_shift_px}, seed}}, threads);
}

DepthFrame apply_spec(const DepthFrame& frame, const NoiseSpec& spec, std::uint32_t spec_index,
                      std::uint32_t frame_index) {
  const CounterStream rng(spec.seed, spec_index, frame_index);
  return std::visit(
      overloaded{
          [&](const Gaussian& m) { return apply_gaussian(frame, m.sigma_m, rng); },
          [&](const Axial& m) { return apply_axial(frame, m.d_offset_m, m.d_level, rng); },
          [&](const Radial& m) { return apply_radial(frame, m.sigma_m, rng); },
          [&](const Motion& m) { return apply_motion_frame(frame, m.max_shift_px, rng); },
          [&](const EdgePermutation& m) { return apply_edge_permutation(frame, m, rng); },
          [&](const EdgeGaussian& m) { return apply_edge_gaussian(frame, m, rng); },
      },
      spec.model);
}

DepthFrame apply_chain_frame(const DepthFrame& frame, const NoiseChain& chain, std::uint32_t frame_index) {
  if (chain.empty()) throw ParameterError("noise chain is empty");
  DepthFrame current = frame;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    current = apply_spec(current, chain[i], static_cast<std::uint32_t>(i), frame_index);
  }
  return current;
}

DepthVideo apply_chain(const DepthVideo& video, const NoiseChain& chain, unsigned threads) {
  video.validate();
  if (chain.empty()) throw ParameterError("noise chain is empty");
  for (const auto& spec : chain) spec.validate();
  DepthVideo out;
  out.frame_rate_hz = video.frame_rate_hz;
  out.background_m = video.background_m;
  out.frames.resize(video.frames.size());
  parallel_for(video.frames.size(), threads, [&](std::size_t t) {
    out.frames[t] = apply_chain_frame(video.frames[t], chain, static_cast<std::uint32_t>(t));
  });
  return out;
}

}  // namespace respsim::noise
