#include <cstdint>
#include <iostream>
#include <string>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "app/commands.hpp"
#include "respsim/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

void add_common(CLI::App* cmd, respsim::app::CommonOptions& common, std::uint64_t& seed, std::string& config,
                std::string& out, const std::string& out_help) {
  cmd->add_option("--config", config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", seed, "Global seed; overrides the seeds of every noise model");
  cmd->add_option("--out", out, out_help);
  cmd->add_option("--threads", common.threads, "Worker threads (0 = machine parallelism)")
      ->check(CLI::Range(0u, 1024u));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace respsim::app;
  namespace fs = std::filesystem;

  CLI::App app{"Depth-camera respiration simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RESPSIM_VERSION);

  CommonOptions common;
  std::uint64_t seed = 0;
  std::string config, out;

  auto* render = app.add_subcommand("render", "Render the clean depth video of a breathing torso");
  add_common(render, common, seed, config, out, "Output video directory");

  CorruptOptions corrupt_opts;
  std::string corrupt_in, noise_file;
  auto* corrupt = app.add_subcommand("corrupt", "Apply a noise chain to a depth video");
  add_common(corrupt, common, seed, config, out, "Output video directory (default <in>_noisy)");
  corrupt->add_option("--in", corrupt_in, "Input video directory")->required();
  corrupt->add_option("--noise", noise_file, "Noise chain (JSON object or array)");

  ExtractOptions extract_opts;
  std::string extract_in;
  auto* extract = app.add_subcommand("extract", "Average a chest RoI into a signal CSV");
  add_common(extract, common, seed, config, out, "Output CSV (default <in>/signal.csv)");
  extract->add_option("--in", extract_in, "Input video directory")->required();
  extract->add_option("--x0", extract_opts.x0, "RoI left column");
  extract->add_option("--y0", extract_opts.y0, "RoI top row");
  extract->add_option("--width", extract_opts.width_px, "RoI width in pixels");
  extract->add_option("--height", extract_opts.height_px, "RoI height in pixels");
  extract->add_option("--scale", extract_opts.scale, "Nearest-neighbour rescale factor in (0, 1]");

  AnalyzeOptions analyze_opts;
  std::string noisy, reference;
  auto* analyze = app.add_subcommand("analyze", "SNR of a noisy signal against a clean reference");
  add_common(analyze, common, seed, config, out, "Write the JSON report here instead of stdout");
  analyze->add_option("--noisy", noisy, "Noisy signal CSV")->required();
  analyze->add_option("--reference", reference, "Clean reference signal CSV")->required();
  analyze->add_option("--band", analyze_opts.band_hz, "Half width of the SNR bands in Hz");

  SweepOptions sweep_opts;
  std::string grid, clean;
  auto* sweep = app.add_subcommand("sweep", "Sweep one noise parameter over scales and seeds");
  add_common(sweep, common, seed, config, out, "Output directory (default <output_dir>/sweep)");
  sweep->add_option("--grid", grid, "Sweep grid (JSON)")->required();
  sweep->add_option("--clean", clean, "Reuse a rendered clean video instead of rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (auto* cmd : {render, corrupt, extract, analyze, sweep}) {
    if (!cmd->parsed()) continue;
    if (cmd->count("--config")) common.config = fs::path(config);
    if (cmd->count("--seed")) common.seed = seed;
    if (cmd->count("--out")) common.out = fs::path(out);
  }

  try {
    if (render->parsed()) {
      cmd_render(common, std::cout);
    } else if (corrupt->parsed()) {
      corrupt_opts.in = corrupt_in;
      if (!noise_file.empty()) corrupt_opts.noise = fs::path(noise_file);
      cmd_corrupt(common, corrupt_opts, std::cout);
    } else if (extract->parsed()) {
      extract_opts.in = extract_in;
      cmd_extract(common, extract_opts, std::cout);
    } else if (analyze->parsed()) {
      analyze_opts.noisy = noisy;
      analyze_opts.reference = reference;
      const auto report = cmd_analyze(common, analyze_opts);
      if (!common.out) std::cout << report.dump(2) << '\n';
    } else if (sweep->parsed()) {
      sweep_opts.grid = grid;
      if (!clean.empty()) sweep_opts.clean = fs::path(clean);
      cmd_sweep(common, sweep_opts, std::cout);
    }
  } catch (const respsim::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const respsim::IngestionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
