#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "respsim/extract.hpp"
#include "respsim/noise.hpp"
#include "respsim/scene.hpp"
#include "respsim/signals.hpp"

namespace respsim::app {

inline constexpr int kConfigSchemaVersion = 1;

struct SignalSource {
  std::optional<signals::SynthesisParams> synthetic;  ///< set unless `file` is used
  std::filesystem::path file;
  double file_rate_hz = 0.0;
  /// Low-pass before normalisation. Defaults to on for files, off for synthetic.
  std::optional<bool> lowpass;
  double cutoff_hz = 1.0;
  bool synthetic_seed_explicit = false;

  bool use_lowpass() const { return lowpass.value_or(!synthetic.has_value()); }
};

/// RoI with optional placement; unset x0/y0 centre it on the chest apex.
struct RoiConfig {
  std::optional<int> x0;
  std::optional<int> y0;
  int width_px = 280;
  int height_px = 206;
  double scale = 1.0;
};

struct AnalysisParams {
  double band_hz = 0.1;
  double f0_lo_hz = 0.1;
  double f0_hi_hz = 0.5;
};

struct ExperimentConfig {
  scene::TorsoScene scene;
  SignalSource signal;
  double frame_rate_hz = 30.0;
  noise::NoiseChain noise;
  RoiConfig roi;
  AnalysisParams analysis;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
};

/// Strict parse: unknown keys, wrong types and invalid values throw
/// ParameterError with the JSON path of the offending field. Relative signal
/// file paths resolve against `base_dir` and must exist.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json scene_to_json(const scene::TorsoScene& scene);
scene::TorsoScene scene_from_json(const nlohmann::json& j, const std::string& path = "scene");
nlohmann::json roi_to_json(const extract::RoiSpec& roi);

/// FNV-1a 64 of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

/// Override the global seed (and the synthetic-signal seed when it was not set explicitly).
void apply_seed(ExperimentConfig& config, std::uint64_t seed);

/// Driver at the frame rate: synthesize or load, resample, optional low-pass, normalise.
signals::RespSignal build_driver(const ExperimentConfig& config);

extract::RoiSpec resolve_roi(const RoiConfig& roi, const scene::TorsoScene& scene);

}  // namespace respsim::app
