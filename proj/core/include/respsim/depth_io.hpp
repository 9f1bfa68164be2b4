#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "respsim/depth.hpp"

namespace respsim {

inline constexpr int kVideoSchemaVersion = 1;
inline constexpr const char* kVideoFormatName = "respsim-depth-video";

/// Frame file name inside a video directory: f0000.depth, f0001.depth, ...
std::string frame_file_name(std::size_t index);

/// Write `video` as meta.json plus one little-endian float32 file per frame.
///
/// `extra` is merged into meta.json (scene parameters, seed, provenance). The
/// keys written by this function (format, schema_version, width, height,
/// frame_rate_hz, frame_count, sentinel_depth_m) take precedence.
void write_video(const std::filesystem::path& dir, const DepthVideo& video,
                 const nlohmann::json& extra = nlohmann::json::object());

struct LoadedVideo {
  DepthVideo video;
  nlohmann::json meta;
};

/// Read a directory written by write_video. Throws DataError on any mismatch.
LoadedVideo read_video(const std::filesystem::path& dir);

/// Frame payload codec (row-major little-endian float32).
std::string encode_frame(const DepthFrame& frame);
DepthFrame decode_frame(const std::string& bytes, int width, int height);

}  // namespace respsim
