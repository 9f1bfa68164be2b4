#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "respsim/depth.hpp"
#include "respsim/random.hpp"

namespace respsim::noise {

/// a) i.i.d. additive Gaussian on every pixel.
struct Gaussian {
  double sigma_m = 0.01;
};
/// b) axial: eps = eta * ((Z - d_offset) * d_level)^2.
struct Axial {
  double d_offset_m = 0.0;
  double d_level = 0.1;
};
/// c) radial: Gaussian weighted by a linear mask, 0 at the image centre and 1 at the corners.
struct Radial {
  double sigma_m = 0.01;
};
/// d) motion: random integer translation per frame.
struct Motion {
  double max_shift_px = 1.0;
};
/// e) edge permutation: resample from a disk of radius r_p inside the area of effect.
struct EdgePermutation {
  double sigma_g_px = 2.0;
  int r_p_px = 2;
  double aoe_threshold = 0.05;
};
/// f) strong Gaussian noise inside the area of effect.
struct EdgeGaussian {
  double sigma_g_px = 2.0;
  double sigma_m = 0.05;
  double aoe_threshold = 0.05;
};

using NoiseModel = std::variant<Gaussian, Axial, Radial, Motion, EdgePermutation, EdgeGaussian>;

struct NoiseSpec {
  NoiseModel model;
  std::uint64_t seed = 0;

  /// Discriminator used in JSON: gaussian, axial, radial, motion, edge_permutation, edge_gaussian.
  std::string_view type_name() const;
  void validate() const;
};

/// Specs applied in order.
using NoiseChain = std::vector<NoiseSpec>;

// JSON: {"type": "...", <parameter fields>, "seed": n}; a chain is an array.
nlohmann::json to_json(const NoiseSpec& spec);
nlohmann::json to_json(const NoiseChain& chain);
/// Strict: unknown types or keys and out-of-range values throw ParameterError
/// whose message starts with `path`. A chain may be empty (no noise).
NoiseSpec spec_from_json(const nlohmann::json& j, const std::string& path = "noise");
NoiseChain chain_from_json(const nlohmann::json& j, const std::string& path = "noise");

/// Named numeric parameter of a spec (e.g. "sigma_m"); throws ParameterError for unknown names.
double get_parameter(const NoiseSpec& spec, std::string_view name);
void set_parameter(NoiseSpec& spec, std::string_view name, double value);

/// Area of effect: smoothed, renormalised edge response in [0, 1].
struct AoeMask {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// 3x3 Sobel magnitude / max -> Gaussian blur (std sigma_g, radius ceil(3 sigma),
/// reflect padding) -> / max -> zero below aoe_threshold. Flat frames give all zeros.
AoeMask edge_aoe(const DepthFrame& frame, double sigma_g_px, double aoe_threshold);

/// Linear radial mask value r / r_corner, measured between pixel centres.
double radial_mask(int x, int y, int width, int height);

// Single-frame models. `rng` addresses the (seed, spec index, frame) stream.
DepthFrame apply_gaussian(const DepthFrame& frame, double sigma_m, const CounterStream& rng);
DepthFrame apply_axial(const DepthFrame& frame, double d_offset_m, double d_level, const CounterStream& rng);
DepthFrame apply_radial(const DepthFrame& frame, double sigma_m, const CounterStream& rng);
DepthFrame apply_edge_gaussian(const DepthFrame& frame, const EdgeGaussian& spec, const CounterStream& rng);

enum class Boundary { clipped, toroidal };

/// Pixels in the AoE are replaced, with probability mask(p), by a value drawn
/// uniformly from the disk of radius r_p around them, read from the input.
/// `Boundary::clipped` restricts the disk to the image; `toroidal` wraps it.
DepthFrame apply_edge_permutation(const DepthFrame& frame, const EdgePermutation& spec,
                                  const CounterStream& rng, Boundary boundary = Boundary::clipped);
/// Same as above with an explicit mask (testing hook and shared AoE).
DepthFrame apply_edge_permutation(const DepthFrame& frame, const AoeMask& mask, int r_p_px,
                                  const CounterStream& rng, Boundary boundary = Boundary::clipped);

struct Shift {
  int dx = 0;
  int dy = 0;
};

/// Per-frame offset, each component uniform on {-round(max), ..., +round(max)}.
Shift draw_shift(double max_shift_px, const CounterStream& rng);
/// out(x, y) = in(x - dx, y - dy) with edge replication for vacated pixels.
DepthFrame translate(const DepthFrame& frame, Shift shift);
/// Throws ParameterError if the rounded shift reaches the frame dimensions.
DepthFrame apply_motion_frame(const DepthFrame& frame, double max_shift_px, const CounterStream& rng);
DepthVideo apply_motion(const DepthVideo& video, double max_shift_px, std::uint64_t seed, unsigned threads = 1);

/// One spec at chain position `spec_index` on frame `frame_index`.
DepthFrame apply_spec(const DepthFrame& frame, const NoiseSpec& spec, std::uint32_t spec_index,
                      std::uint32_t frame_index);
/// The chain on one frame; the RNG stream of spec i is (spec.seed, i, frame_index).
DepthFrame apply_chain_frame(const DepthFrame& frame, const NoiseChain& chain, std::uint32_t frame_index);
DepthVideo apply_chain(const DepthVideo& video, const NoiseChain& chain, unsigned threads = 1);

}  // namespace respsim::noise
