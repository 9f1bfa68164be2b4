#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace respsim::app {

/// Options shared by every subcommand.
struct CommonOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  unsigned threads = 0;  ///< 0 = machine parallelism
};

/// Config file (or defaults) with the --seed override applied.
ExperimentConfig effective_config(const CommonOptions& common);

/// Provenance block written next to every output.
nlohmann::json provenance(const std::string& command, const ExperimentConfig& config,
                          const nlohmann::json& inputs = nlohmann::json::object());

struct RenderResult {
  std::filesystem::path dir;
  std::size_t frames = 0;
};
RenderResult cmd_render(const CommonOptions& common, std::ostream& log);

struct CorruptOptions {
  std::filesystem::path in;
  std::optional<std::filesystem::path> noise;  ///< chain file; else the config's chain
};
std::filesystem::path cmd_corrupt(const CommonOptions& common, const CorruptOptions& opts, std::ostream& log);

struct ExtractOptions {
  std::filesystem::path in;
  std::optional<int> x0, y0, width_px, height_px;
  std::optional<double> scale;
};
std::filesystem::path cmd_extract(const CommonOptions& common, const ExtractOptions& opts, std::ostream& log);

struct AnalyzeOptions {
  std::filesystem::path noisy;
  std::filesystem::path reference;
  std::optional<double> band_hz;
};
/// Report as JSON; written to --out when given, else returned only.
nlohmann::json cmd_analyze(const CommonOptions& common, const AnalyzeOptions& opts);

struct SweepOptions {
  std::filesystem::path grid;
  std::optional<std::filesystem::path> clean;  ///< reuse a rendered video
};
std::filesystem::path cmd_sweep(const CommonOptions& common, const SweepOptions& opts, std::ostream& log);

}  // namespace respsim::app
