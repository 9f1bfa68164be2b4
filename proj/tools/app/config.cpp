#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "respsim/error.hpp"

namespace respsim::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads the fields of one JSON object and rejects any key it was not asked about.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  static void fail(const std::string& path, const std::string& what) { throw ParameterError(path + ": " + what); }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() || it->is_null() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail(at(key), "must be finite");
    return d;
  }

  double positive(const std::string& key, double fallback) {
    const double d = number(key, fallback);
    if (!(d > 0.0)) fail(at(key), "must be > 0");
    return d;
  }

  std::optional<long long> integer(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(at(key), "expected an integer");
    return v->get<long long>();
  }

  std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<long long>() >= 0) return v->get<std::uint64_t>();
    fail(at(key), "expected a non-negative integer");
    return 0;
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(at(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail(at(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

int to_int(long long v, const std::string& path) {
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) ObjectReader::fail(path, "out of range");
  return static_cast<int>(v);
}

template <class F>
void rethrow_at(const std::string& path, F&& f) {
  try {
    f();
  } catch (const ParameterError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ParameterError(path + ": " + what);
  }
}

signals::SynthesisParams synthesis_from_json(const json& j, const std::string& path, bool& seed_explicit) {
  ObjectReader r(j, path);
  signals::SynthesisParams p;
  p.rate_hz = r.number("rate_hz", p.rate_hz);
  p.rate_jitter = r.number("rate_jitter", p.rate_jitter);
  p.amp_jitter = r.number("amp_jitter", p.amp_jitter);
  p.inhale_fraction = r.number("inhale_fraction", p.inhale_fraction);
  p.duration_s = r.number("duration_s", p.duration_s);
  seed_explicit = r.find("seed") != nullptr;
  p.seed = r.seed("seed", 0);
  r.finish();
  rethrow_at(path, [&] { p.validate(); });
  return p;
}

SignalSource signal_from_json(const json& j, const std::string& path, const fs::path& base_dir) {
  ObjectReader r(j, path);
  SignalSource s;
  const json* synth = r.find("synthetic");
  const json* file = r.find("file");
  if (synth && file) ObjectReader::fail(path, "give either 'synthetic' or 'file', not both");
  if (file) {
    ObjectReader f(*file, r.at("file"));
    const auto p = f.string("path");
    if (!p) ObjectReader::fail(f.at("path"), "required field is missing");
    s.file = fs::path(*p).is_absolute() || base_dir.empty() ? fs::path(*p) : base_dir / *p;
    s.file_rate_hz = f.positive("sample_rate_hz", 0.0 + 1.0);
    if (!f.find("sample_rate_hz")) ObjectReader::fail(f.at("sample_rate_hz"), "required field is missing");
    f.finish();
    if (!fs::exists(s.file)) ObjectReader::fail(f.at("path"), "file not found: " + s.file.string());
  } else {
    s.synthetic = synth ? synthesis_from_json(*synth, r.at("synthetic"), s.synthetic_seed_explicit)
                        : signals::SynthesisParams{};
  }
  s.lowpass = r.boolean("lowpass");
  s.cutoff_hz = r.positive("cutoff_hz", s.cutoff_hz);
  r.finish();
  return s;
}

RoiConfig roi_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  RoiConfig roi;
  if (auto v = r.integer("x0")) roi.x0 = to_int(*v, r.at("x0"));
  if (auto v = r.integer("y0")) roi.y0 = to_int(*v, r.at("y0"));
  if (auto v = r.integer("width_px")) roi.width_px = to_int(*v, r.at("width_px"));
  if (auto v = r.integer("height_px")) roi.height_px = to_int(*v, r.at("height_px"));
  roi.scale = r.number("scale", roi.scale);
  r.finish();
  if (roi.width_px < 1) ObjectReader::fail(r.at("width_px"), "must be >= 1");
  if (roi.height_px < 1) ObjectReader::fail(r.at("height_px"), "must be >= 1");
  if (!(roi.scale > 0.0 && roi.scale <= 1.0)) ObjectReader::fail(r.at("scale"), "must be in (0, 1]");
  return roi;
}

AnalysisParams analysis_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  AnalysisParams a;
  a.band_hz = r.positive("band_hz", a.band_hz);
  if (const json* range = r.find("f0_range_hz")) {
    if (!range->is_array() || range->size() != 2 || !(*range)[0].is_number() || !(*range)[1].is_number()) {
      ObjectReader::fail(r.at("f0_range_hz"), "expected [low, high]");
    }
    a.f0_lo_hz = (*range)[0].get<double>();
    a.f0_hi_hz = (*range)[1].get<double>();
    if (!(a.f0_lo_hz > 0.0 && a.f0_hi_hz > a.f0_lo_hz)) {
      ObjectReader::fail(r.at("f0_range_hz"), "need 0 < low < high");
    }
  }
  r.finish();
  return a;
}

}  // namespace

scene::TorsoScene scene_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  scene::TorsoScene s;
  s.half_width_m = r.positive("half_width_m", s.half_width_m);
  s.half_depth_m = r.positive("half_depth_m", s.half_depth_m);
  s.height_m = r.positive("height_m", s.height_m);
  if (auto v = r.integer("n_u")) s.n_u = to_int(*v, r.at("n_u"));
  if (auto v = r.integer("n_v")) s.n_v = to_int(*v, r.at("n_v"));
  if (const json* c = r.find("chest")) {
    ObjectReader cr(*c, r.at("chest"));
    s.chest.center_x_m = cr.number("center_x_m", s.chest.center_x_m);
    s.chest.center_z_m = cr.number("center_z_m", s.chest.center_z_m);
    s.chest.radius_x_m = cr.positive("radius_x_m", s.chest.radius_x_m);
    s.chest.radius_z_m = cr.positive("radius_z_m", s.chest.radius_z_m);
    cr.finish();
  }
  if (const json* d = r.find("motion_dir")) {
    if (!d->is_array() || d->size() != 3 || !(*d)[0].is_number() || !(*d)[1].is_number() || !(*d)[2].is_number()) {
      ObjectReader::fail(r.at("motion_dir"), "expected [x, y, z]");
    }
    const scene::Vec3 v{(*d)[0].get<double>(), (*d)[1].get<double>(), (*d)[2].get<double>()};
    if (!(v.norm() > 0.0)) ObjectReader::fail(r.at("motion_dir"), "must be non-zero");
    // Already-unit vectors are kept as written so serialised scenes reload exactly.
    s.motion_dir = std::abs(v.norm() - 1.0) <= 1e-12 ? v : scene::normalized(v);
  }
  s.amplitude_m = r.positive("amplitude_m", s.amplitude_m);
  s.camera_distance_m = r.positive("camera_distance_m", s.camera_distance_m);
  if (const json* k = r.find("intrinsics")) {
    ObjectReader kr(*k, r.at("intrinsics"));
    if (auto v = kr.integer("width_px")) s.intrinsics.width_px = to_int(*v, kr.at("width_px"));
    if (auto v = kr.integer("height_px")) s.intrinsics.height_px = to_int(*v, kr.at("height_px"));
    s.intrinsics.focal_px = kr.positive("focal_px", s.intrinsics.focal_px);
    if (kr.find("cx")) s.intrinsics.cx = kr.number("cx", 0.0);
    if (kr.find("cy")) s.intrinsics.cy = kr.number("cy", 0.0);
    kr.finish();
    rethrow_at(r.at("intrinsics"), [&] { s.intrinsics.validate(); });
  }
  r.finish();
  rethrow_at(path, [&] { s.validate(); });
  return s;
}

json scene_to_json(const scene::TorsoScene& s) {
  json k = {{"width_px", s.intrinsics.width_px}, {"height_px", s.intrinsics.height_px},
            {"focal_px", s.intrinsics.focal_px}};
  if (s.intrinsics.cx) k["cx"] = *s.intrinsics.cx;
  if (s.intrinsics.cy) k["cy"] = *s.intrinsics.cy;
  return {{"half_width_m", s.half_width_m},
          {"half_depth_m", s.half_depth_m},
          {"height_m", s.height_m},
          {"n_u", s.n_u},
          {"n_v", s.n_v},
          {"chest",
           {{"center_x_m", s.chest.center_x_m},
            {"center_z_m", s.chest.center_z_m},
            {"radius_x_m", s.chest.radius_x_m},
            {"radius_z_m", s.chest.radius_z_m}}},
          {"motion_dir", {s.motion_dir.x, s.motion_dir.y, s.motion_dir.z}},
          {"amplitude_m", s.amplitude_m},
          {"camera_distance_m", s.camera_distance_m},
          {"intrinsics", k}};
}

json roi_to_json(const extract::RoiSpec& roi) {
  return {{"x0", roi.x0}, {"y0", roi.y0}, {"width_px", roi.width_px}, {"height_px", roi.height_px},
          {"scale", roi.scale}};
}

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  ObjectReader r(j, "config");
  ExperimentConfig c;
  c.seed = r.seed("seed", 0);
  if (const json* v = r.find("scene")) c.scene = scene_from_json(*v, "scene");
  if (const json* v = r.find("signal")) c.signal = signal_from_json(*v, "signal", base_dir);
  else c.signal.synthetic = signals::SynthesisParams{};
  c.frame_rate_hz = r.positive("frame_rate_hz", c.frame_rate_hz);
  if (const json* v = r.find("noise")) c.noise = noise::chain_from_json(*v, "noise");
  if (const json* v = r.find("roi")) c.roi = roi_from_json(*v, "roi");
  if (const json* v = r.find("analysis")) c.analysis = analysis_from_json(*v, "analysis");
  if (auto v = r.string("output_dir")) c.output_dir = *v;
  if (const auto v = r.integer("schema_version"); v && *v != kConfigSchemaVersion) {
    ObjectReader::fail(r.at("schema_version"), "unsupported version " + std::to_string(*v));
  }
  r.finish();
  if (c.signal.synthetic && !c.signal.synthetic_seed_explicit) c.signal.synthetic->seed = c.seed;
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError("config: '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

json to_json(const ExperimentConfig& c) {
  json signal;
  if (c.signal.synthetic) {
    const auto& p = *c.signal.synthetic;
    signal["synthetic"] = {{"rate_hz", p.rate_hz},         {"rate_jitter", p.rate_jitter},
                           {"amp_jitter", p.amp_jitter},   {"inhale_fraction", p.inhale_fraction},
                           {"duration_s", p.duration_s},   {"seed", p.seed}};
  } else {
    signal["file"] = {{"path", c.signal.file.string()}, {"sample_rate_hz", c.signal.file_rate_hz}};
  }
  signal["lowpass"] = c.signal.use_lowpass();
  signal["cutoff_hz"] = c.signal.cutoff_hz;

  json roi = {{"width_px", c.roi.width_px}, {"height_px", c.roi.height_px}, {"scale", c.roi.scale}};
  if (c.roi.x0) roi["x0"] = *c.roi.x0;
  if (c.roi.y0) roi["y0"] = *c.roi.y0;

  return {{"schema_version", kConfigSchemaVersion},
          {"seed", c.seed},
          {"scene", scene_to_json(c.scene)},
          {"signal", signal},
          {"frame_rate_hz", c.frame_rate_hz},
          {"noise", noise::to_json(c.noise)},
          {"roi", roi},
          {"analysis",
           {{"band_hz", c.analysis.band_hz}, {"f0_range_hz", {c.analysis.f0_lo_hz, c.analysis.f0_hi_hz}}}},
          {"output_dir", c.output_dir.string()}};
}

std::string config_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_seed(ExperimentConfig& config, std::uint64_t seed) {
  config.seed = seed;
  if (config.signal.synthetic && !config.signal.synthetic_seed_explicit) config.signal.synthetic->seed = seed;
}

signals::RespSignal build_driver(const ExperimentConfig& c) {
  signals::RespSignal raw = c.signal.synthetic ? signals::synthesize(*c.signal.synthetic)
                                               : signals::load_waveform(c.signal.file, c.signal.file_rate_hz);
  signals::RespSignal s = signals::resample_linear(raw, c.frame_rate_hz);
  if (c.signal.use_lowpass()) s = signals::lowpass_butter4(s, c.signal.cutoff_hz);
  s = signals::normalize(s);
  s.kind = raw.kind;
  return s;
}

extract::RoiSpec resolve_roi(const RoiConfig& roi, const scene::TorsoScene& scene) {
  extract::RoiSpec spec = extract::default_roi(scene, roi.width_px, roi.height_px);
  if (roi.x0) spec.x0 = *roi.x0;
  if (roi.y0) spec.y0 = *roi.y0;
  spec.scale = roi.scale;
  return spec;
}

}  // namespace respsim::app
