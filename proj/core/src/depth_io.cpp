#include "respsim/depth_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "respsim/error.hpp"

namespace respsim {

namespace fs = std::filesystem;

std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "f%04zu.depth", index);
  return buf;
}

std::string encode_frame(const DepthFrame& frame) {
  std::string bytes(frame.depth.size() * 4, '\0');
  for (std::size_t i = 0; i < frame.depth.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(frame.depth[i]);
    bytes[4 * i + 0] = static_cast<char>(bits & 0xffu);
    bytes[4 * i + 1] = static_cast<char>((bits >> 8) & 0xffu);
    bytes[4 * i + 2] = static_cast<char>((bits >> 16) & 0xffu);
    bytes[4 * i + 3] = static_cast<char>((bits >> 24) & 0xffu);
  }
  return bytes;
}

DepthFrame decode_frame(const std::string& bytes, int width, int height) {
  DepthFrame frame(width, height);
  if (bytes.size() != frame.depth.size() * 4) {
    throw DataError("frame payload has " + std::to_string(bytes.size()) + " bytes, expected " +
                    std::to_string(frame.depth.size() * 4));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  for (std::size_t i = 0; i < frame.depth.size(); ++i) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[4 * i]) |
                               (static_cast<std::uint32_t>(p[4 * i + 1]) << 8) |
                               (static_cast<std::uint32_t>(p[4 * i + 2]) << 16) |
                               (static_cast<std::uint32_t>(p[4 * i + 3]) << 24);
    frame.depth[i] = std::bit_cast<float>(bits);
  }
  return frame;
}

void write_video(const fs::path& dir, const DepthVideo& video, const nlohmann::json& extra) {
  video.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory '" + dir.string() + "': " + ec.message());

  nlohmann::json meta = extra.is_object() ? extra : nlohmann::json::object();
  meta["format"] = kVideoFormatName;
  meta["schema_version"] = kVideoSchemaVersion;
  meta["width"] = video.width();
  meta["height"] = video.height();
  meta["frame_rate_hz"] = video.frame_rate_hz;
  meta["frame_count"] = video.frames.size();
  meta["sentinel_depth_m"] = video.background_m;

  for (std::size_t t = 0; t < video.frames.size(); ++t) {
    std::ofstream out(dir / frame_file_name(t), std::ios::binary | std::ios::trunc);
    const std::string bytes = encode_frame(video.frames[t]);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("cannot write frame " + std::to_string(t) + " to '" + dir.string() + "'");
  }
  std::ofstream out(dir / "meta.json", std::ios::trunc);
  out << meta.dump(2) << '\n';
  if (!out) throw DataError("cannot write meta.json to '" + dir.string() + "'");
}

LoadedVideo read_video(const fs::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) throw DataError("no meta.json in '" + dir.string() + "'");
  LoadedVideo loaded;
  try {
    loaded.meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("meta.json in '" + dir.string() + "' is not valid JSON: " + e.what());
  }
  const auto& meta = loaded.meta;
  try {
    if (meta.at("format").get<std::string>() != kVideoFormatName) {
      throw DataError("'" + dir.string() + "' is not a respsim depth video");
    }
    const int width = meta.at("width").get<int>();
    const int height = meta.at("height").get<int>();
    const auto count = meta.at("frame_count").get<std::size_t>();
    if (width <= 0 || height <= 0 || count == 0) throw DataError("meta.json has empty dimensions");
    loaded.video.frame_rate_hz = meta.at("frame_rate_hz").get<double>();
    loaded.video.background_m = meta.at("sentinel_depth_m").get<float>();
    loaded.video.frames.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      std::ifstream f(dir / frame_file_name(t), std::ios::binary);
      if (!f) throw DataError("missing frame file " + frame_file_name(t));
      const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      loaded.video.frames.push_back(decode_frame(bytes, width, height));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("meta.json in '" + dir.string() + "' is missing fields: " + e.what());
  }
  return loaded;
}

}  // namespace respsim
