#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "respsim/analysis.hpp"
#include "respsim/csv.hpp"
#include "respsim/depth_io.hpp"
#include "respsim/error.hpp"
#include "respsim/extract.hpp"
#include "respsim/parallel.hpp"
#include "respsim/scene.hpp"
#include "respsim/sweep.hpp"
#include "svg.hpp"

#ifndef RESPSIM_VERSION
#define RESPSIM_VERSION "0.0.0"
#endif

namespace respsim::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json_file(const fs::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ParameterError(what + ": cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError(what + ": '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

fs::path strip_trailing_slash(const fs::path& p) {
  fs::path n = p.lexically_normal();
  if (!n.has_filename() && n.has_parent_path()) n = n.parent_path();
  return n;
}

scene::TorsoScene scene_for_video(const json& meta, const ExperimentConfig& config) {
  if (meta.contains("scene")) return scene_from_json(meta["scene"], "meta.scene");
  return config.scene;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParameterError(path + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParameterError(path + ": expected a non-empty array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

sweep::SweepGrid grid_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("grid: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "model" && key != "param" && key != "values" && key != "scales" && key != "seeds" && key != "prefix") {
      throw ParameterError("grid." + key + ": unknown key");
    }
  }
  sweep::SweepGrid g;
  if (!j.contains("model")) throw ParameterError("grid.model: required field is missing");
  if (!j.contains("param") || !j["param"].is_string()) throw ParameterError("grid.param: expected a parameter name");
  g.param_name = j["param"].get<std::string>();
  if (!j.contains("values")) throw ParameterError("grid.values: required field is missing");
  g.values = number_list(j["values"], "grid.values");
  // The swept field may be omitted from the model; the first grid value stands in for parsing.
  json model = j["model"];
  if (model.is_object() && !model.contains(g.param_name)) {
    if (g.param_name == "r_p_px") {
      model[g.param_name] = static_cast<long long>(std::llround(g.values.front()));
    } else {
      model[g.param_name] = g.values.front();
    }
  }
  g.spec = noise::spec_from_json(model, "grid.model");
  g.scales = j.contains("scales") ? number_list(j["scales"], "grid.scales") : std::vector<double>{1.0, 0.2, 0.05};
  if (j.contains("seeds")) {
    const json& s = j["seeds"];
    if (!s.is_array() || s.empty()) throw ParameterError("grid.seeds: expected a non-empty array of integers");
    for (const auto& v : s) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParameterError("grid.seeds: expected non-negative integers");
      }
      g.seeds.push_back(v.get<std::uint64_t>());
    }
  } else {
    g.seeds = {1, 2, 3};
  }
  if (j.contains("prefix")) g.prefix = noise::chain_from_json(j["prefix"], "grid.prefix");
  try {
    g.validate();
  } catch (const ParameterError& e) {
    throw ParameterError(std::string("grid: ") + e.what());
  }
  return g;
}

json grid_to_json(const sweep::SweepGrid& g) {
  return {{"model", noise::to_json(g.spec)}, {"param", g.param_name}, {"values", g.values},
          {"scales", g.scales},              {"seeds", g.seeds},      {"prefix", noise::to_json(g.prefix)}};
}

}  // namespace

ExperimentConfig effective_config(const CommonOptions& common) {
  ExperimentConfig c = common.config ? load_config(*common.config) : parse_config(json::object());
  if (common.seed) apply_seed(c, *common.seed);
  return c;
}

json provenance(const std::string& command, const ExperimentConfig& config, const json& inputs) {
  const json cfg = to_json(config);
  return {{"command", command},
          {"tool_version", RESPSIM_VERSION},
          {"config_schema_version", kConfigSchemaVersion},
          {"video_schema_version", kVideoSchemaVersion},
          {"config_hash", config_hash(cfg)},
          {"seed", config.seed},
          {"config", cfg},
          {"inputs", inputs}};
}

RenderResult cmd_render(const CommonOptions& common, std::ostream& log) {
  const ExperimentConfig config = effective_config(common);
  const signals::RespSignal driver = build_driver(config);
  const DepthVideo video = scene::animate(config.scene, driver, config.frame_rate_hz, common.threads);
  const fs::path dir = common.out.value_or(config.output_dir);
  const json extra = {{"scene", scene_to_json(config.scene)},
                      {"seed", config.seed},
                      {"provenance", provenance("render", config)}};
  write_video(dir, video, extra);
  csv::write_signal(dir / "driver.csv", driver);
  const double duration = static_cast<double>(video.frames.size()) / video.frame_rate_hz;
  log << "rendered " << video.frames.size() << " frames (" << csv::format_number(duration) << " s, "
      << video.width() << "x" << video.height() << ") to " << dir.string() << '\n';
  return {dir, video.frames.size()};
}

fs::path cmd_corrupt(const CommonOptions& common, const CorruptOptions& opts, std::ostream& log) {
  const ExperimentConfig config = effective_config(common);
  noise::NoiseChain chain =
      opts.noise ? noise::chain_from_json(read_json_file(*opts.noise, "noise"), "noise") : config.noise;
  if (common.seed) {
    for (auto& spec : chain) spec.seed = *common.seed;
  }
  LoadedVideo loaded = read_video(opts.in);
  DepthVideo& video = loaded.video;

  std::vector<double> sigma(video.frames.size(), 0.0);
  if (!chain.empty()) {
    parallel_for(video.frames.size(), common.threads, [&](std::size_t t) {
      DepthFrame noisy = noise::apply_chain_frame(video.frames[t], chain, static_cast<std::uint32_t>(t));
      sigma[t] = analysis::frame_noise_std(noisy, video.frames[t]);
      video.frames[t] = std::move(noisy);
    });
  }
  double mean_sigma = 0.0;
  for (double s : sigma) mean_sigma += s;
  mean_sigma /= static_cast<double>(sigma.size());

  json meta = loaded.meta;
  json applied = meta.contains("noise") && meta["noise"].is_array() ? meta["noise"] : json::array();
  for (const auto& spec : chain) applied.push_back(noise::to_json(spec));
  meta["noise"] = applied;
  meta["empirical_sigma_m"] = mean_sigma;
  json inputs = {{"video", opts.in.string()}, {"chain", noise::to_json(chain)}};
  if (opts.noise) inputs["noise_file"] = opts.noise->string();
  if (loaded.meta.contains("provenance")) inputs["source_provenance"] = loaded.meta["provenance"];
  meta["provenance"] = provenance("corrupt", config, inputs);

  const fs::path dir = common.out.value_or(fs::path(strip_trailing_slash(opts.in).string() + "_noisy"));
  write_video(dir, video, meta);
  log << "corrupted " << video.frames.size() << " frames with " << chain.size()
      << " noise model(s), measured std " << csv::format_number(mean_sigma) << " m, to " << dir.string() << '\n';
  return dir;
}

fs::path cmd_extract(const CommonOptions& common, const ExtractOptions& opts, std::ostream& log) {
  const ExperimentConfig config = effective_config(common);
  const LoadedVideo loaded = read_video(opts.in);
  RoiConfig rc = config.roi;
  if (opts.x0) rc.x0 = opts.x0;
  if (opts.y0) rc.y0 = opts.y0;
  if (opts.width_px) rc.width_px = *opts.width_px;
  if (opts.height_px) rc.height_px = *opts.height_px;
  if (opts.scale) rc.scale = *opts.scale;
  const extract::RoiSpec roi = resolve_roi(rc, scene_for_video(loaded.meta, config));
  roi.validate_for(loaded.video.width(), loaded.video.height());

  const signals::RespSignal s = extract::extract_signal(loaded.video, roi, common.threads);
  const fs::path out = common.out.value_or(opts.in / "signal.csv");
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  csv::write_signal(out, s);

  const json& meta = loaded.meta;
  json sidecar = {{"roi", roi_to_json(roi)},
                  {"noise", meta.value("noise", json::array())},
                  {"empirical_sigma_m", meta.value("empirical_sigma_m", 0.0)},
                  {"frame_rate_hz", loaded.video.frame_rate_hz},
                  {"frames", s.size()}};
  json inputs = {{"video", opts.in.string()}};
  if (meta.contains("provenance")) inputs["source_provenance"] = meta["provenance"];
  sidecar["provenance"] = provenance("extract", config, inputs);
  write_text(out.string() + ".json", sidecar.dump(2) + "\n");
  log << "extracted " << s.size() << " samples from RoI " << roi.width_px << "x" << roi.height_px << "+"
      << roi.x0 << "+" << roi.y0 << " at scale " << csv::format_number(roi.scale) << " to " << out.string() << '\n';
  return out;
}

json cmd_analyze(const CommonOptions& common, const AnalyzeOptions& opts) {
  const ExperimentConfig config = effective_config(common);
  const signals::RespSignal noisy = csv::read_signal(opts.noisy);
  const signals::RespSignal reference = csv::read_signal(opts.reference);
  if (noisy.size() != reference.size()) {
    throw ParameterError("signal lengths differ: " + std::to_string(noisy.size()) + " samples in '" +
                         opts.noisy.string() + "', " + std::to_string(reference.size()) + " in '" +
                         opts.reference.string() + "'");
  }
  if (noisy.sample_rate_hz != reference.sample_rate_hz) {
    throw ParameterError("sample rates differ: " + csv::format_number(noisy.sample_rate_hz) + " Hz vs " +
                         csv::format_number(reference.sample_rate_hz) + " Hz");
  }
  const double band = opts.band_hz.value_or(config.analysis.band_hz);
  if (!(band > 0.0)) throw ParameterError("band_hz must be > 0");
  const auto f0 = analysis::detect_f0(reference, config.analysis.f0_lo_hz, config.analysis.f0_hi_hz);
  const auto r = analysis::snr(noisy, f0.f0_hz, band);

  analysis::SnrReport report;
  report.rho = r.rho;
  report.snr_db = r.snr_db;
  report.f0_hz = f0.f0_hz;
  report.band_hz = band;
  report.harmonic_ambiguity = f0.harmonic_ambiguity;
  report.seed = config.seed;
  const fs::path sidecar_path = opts.noisy.string() + ".json";
  if (fs::exists(sidecar_path)) {
    const json side = read_json_file(sidecar_path, "sidecar");
    report.noise_spec = side.value("noise", json::array());
    report.empirical_sigma_m = side.value("empirical_sigma_m", 0.0);
    if (side.contains("roi")) report.scale = side["roi"].value("scale", 1.0);
    if (!report.noise_spec.empty() && report.noise_spec[0].contains("seed")) {
      report.seed = report.noise_spec[0]["seed"].get<std::uint64_t>();
    }
  }
  json out = analysis::to_json(report);
  out["provenance"] = provenance("analyze", config,
                                 {{"noisy", opts.noisy.string()}, {"reference", opts.reference.string()}});
  if (common.out) write_text(*common.out, out.dump(2) + "\n");
  return out;
}

fs::path cmd_sweep(const CommonOptions& common, const SweepOptions& opts, std::ostream& log) {
  const ExperimentConfig config = effective_config(common);
  const sweep::SweepGrid grid = grid_from_json(read_json_file(opts.grid, "grid"));

  DepthVideo clean;
  scene::TorsoScene scene = config.scene;
  json inputs = {{"grid", grid_to_json(grid)}, {"grid_file", opts.grid.string()}};
  if (opts.clean) {
    LoadedVideo loaded = read_video(*opts.clean);
    scene = scene_for_video(loaded.meta, config);
    clean = std::move(loaded.video);
    inputs["clean_video"] = opts.clean->string();
    if (loaded.meta.contains("provenance")) inputs["source_provenance"] = loaded.meta["provenance"];
  } else {
    clean = scene::animate(config.scene, build_driver(config), config.frame_rate_hz, common.threads);
  }

  sweep::SweepSettings settings;
  settings.roi = resolve_roi(config.roi, scene);
  settings.roi.scale = 1.0;
  settings.roi.validate_for(clean.width(), clean.height());
  settings.band_hz = config.analysis.band_hz;
  settings.threads = common.threads;
  const auto reference = extract::extract_signal(clean, settings.roi, common.threads);
  const auto f0 = analysis::detect_f0(reference, config.analysis.f0_lo_hz, config.analysis.f0_hi_hz);
  settings.f0_hz = f0.f0_hz;

  const sweep::SweepResult result = sweep::run_sweep(clean, grid, settings);

  const fs::path dir = common.out.value_or(config.output_dir / "sweep");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "sweep.csv", std::ios::binary | std::ios::trunc);
    csv::write_sweep(out, result.rows);
    if (!out) throw DataError("cannot write sweep.csv");
  }
  {
    std::ofstream out(dir / "summary.csv", std::ios::binary | std::ios::trunc);
    csv::write_summary(out, result.summary);
    if (!out) throw DataError("cannot write summary.csv");
  }
  const std::string title = std::string(grid.spec.type_name()) + " sweep over " + grid.param_name;
  write_text(dir / "sweep.svg", sweep_svg(result.summary, title));

  std::string errors;
  for (const auto& r : result.rows) {
    if (r.error.empty()) continue;
    errors += grid.param_name + "=" + csv::format_number(r.param_value) + " scale=" + csv::format_number(r.scale) +
              " seed=" + std::to_string(r.seed) + ": " + r.error + "\n";
  }
  const fs::path errors_path = dir / "sweep_errors.txt";
  if (!errors.empty()) {
    write_text(errors_path, errors);
  } else if (fs::exists(errors_path)) {
    fs::remove(errors_path);
  }

  json prov = provenance("sweep", config, inputs);
  prov["f0_hz"] = f0.f0_hz;
  prov["harmonic_ambiguity"] = f0.harmonic_ambiguity;
  prov["roi"] = roi_to_json(settings.roi);
  write_text(dir / "provenance.json", prov.dump(2) + "\n");

  log << "swept " << grid.values.size() << " values x " << grid.scales.size() << " scales x " << grid.seeds.size()
      << " seeds (" << result.rows.size() << " rows";
  if (!errors.empty()) log << ", some cells failed; see sweep_errors.txt";
  log << ") to " << dir.string() << '\n';
  return dir;
}

}  // namespace respsim::app
