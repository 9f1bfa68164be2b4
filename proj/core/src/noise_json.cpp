#include <set>
#include <string>

#include "respsim/error.hpp"
#include "respsim/noise.hpp"

namespace respsim::noise {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParameterError(path + "." + key + ": required field is missing");
  if (!it->is_number()) throw ParameterError(path + "." + key + ": expected a number");
  return it->get<double>();
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& path) {
  return j.contains(key) ? number(j, key, path) : fallback;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParameterError(path + "." + key + ": unknown key");
  }
}

}  // namespace

json to_json(const NoiseSpec& spec) {
  json j;
  j["type"] = std::string(spec.type_name());
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, Radial>) {
          j["sigma_m"] = m.sigma_m;
        } else if constexpr (std::is_same_v<T, Axial>) {
          j["d_offset_m"] = m.d_offset_m;
          j["d_level"] = m.d_level;
        } else if constexpr (std::is_same_v<T, Motion>) {
          j["max_shift_px"] = m.max_shift_px;
        } else if constexpr (std::is_same_v<T, EdgePermutation>) {
          j["sigma_g_px"] = m.sigma_g_px;
          j["r_p_px"] = m.r_p_px;
          j["aoe_threshold"] = m.aoe_threshold;
        } else {
          j["sigma_g_px"] = m.sigma_g_px;
          j["sigma_m"] = m.sigma_m;
          j["aoe_threshold"] = m.aoe_threshold;
        }
      },
      spec.model);
  j["seed"] = spec.seed;
  return j;
}

json to_json(const NoiseChain& chain) {
  json j = json::array();
  for (const auto& spec : chain) j.push_back(to_json(spec));
  return j;
}

NoiseSpec spec_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParameterError(path + ": expected an object");
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) {
    throw ParameterError(path + ".type: required string field is missing");
  }
  const std::string type = type_it->get<std::string>();

  NoiseSpec spec;
  if (type == "gaussian") {
    reject_unknown(j, {"type", "seed", "sigma_m"}, path);
    spec.model = Gaussian{number(j, "sigma_m", path)};
  } else if (type == "axial") {
    reject_unknown(j, {"type", "seed", "d_offset_m", "d_level"}, path);
    spec.model = Axial{number(j, "d_offset_m", path), number(j, "d_level", path)};
  } else if (type == "radial") {
    reject_unknown(j, {"type", "seed", "sigma_m"}, path);
    spec.model = Radial{number(j, "sigma_m", path)};
  } else if (type == "motion") {
    reject_unknown(j, {"type", "seed", "max_shift_px"}, path);
    spec.model = Motion{number(j, "max_shift_px", path)};
  } else if (type == "edge_permutation") {
    reject_unknown(j, {"type", "seed", "sigma_g_px", "r_p_px", "aoe_threshold"}, path);
    const auto r_it = j.find("r_p_px");
    if (r_it == j.end()) throw ParameterError(path + ".r_p_px: required field is missing");
    if (!r_it->is_number_integer()) throw ParameterError(path + ".r_p_px: expected an integer");
    spec.model = EdgePermutation{number(j, "sigma_g_px", path), r_it->get<int>(),
                                 number_or(j, "aoe_threshold", 0.05, path)};
  } else if (type == "edge_gaussian") {
    reject_unknown(j, {"type", "seed", "sigma_g_px", "sigma_m", "aoe_threshold"}, path);
    spec.model = EdgeGaussian{number(j, "sigma_g_px", path), number(j, "sigma_m", path),
                              number_or(j, "aoe_threshold", 0.05, path)};
  } else {
    throw ParameterError(path + ".type: unknown noise model '" + type + "'");
  }

  if (const auto s = j.find("seed"); s != j.end()) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<long long>() >= 0)) {
      throw ParameterError(path + ".seed: expected a non-negative integer");
    }
    spec.seed = s->get<std::uint64_t>();
  }
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    throw ParameterError(path + ": " + e.what());
  }
  return spec;
}

NoiseChain chain_from_json(const json& j, const std::string& path) {
  NoiseChain chain;
  if (j.is_object()) {
    chain.push_back(spec_from_json(j, path));
    return chain;
  }
  if (!j.is_array()) throw ParameterError(path + ": expected an array of noise specs");
  for (std::size_t i = 0; i < j.size(); ++i) {
    chain.push_back(spec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return chain;
}

}  // namespace respsim::noise
