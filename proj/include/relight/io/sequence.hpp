#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "relight/core/image.hpp"

namespace relight {

struct VideoManifest {
    std::vector<std::filesystem::path> frame_paths;
    double fps = 24.0;
    int width = 0;
    int height = 0;
};

struct LoadedSequence {
    std::vector<Frame> frames;
    VideoManifest manifest;
};

/// Loads a directory of PNG files (lexicographic order) or a manifest.json
/// whose "frames" entries are resolved relative to the manifest's directory.
/// Throws IoError for unreadable/empty inputs and ValidationError when frame
/// sizes differ.
LoadedSequence load_sequence(const std::filesystem::path& dir_or_manifest);

/// Writes f0000.png, f0001.png, ... and manifest.json (frames, fps, width,
/// height) into `dir`, creating it if needed.
VideoManifest save_sequence(std::span<const Frame> frames, const std::filesystem::path& dir,
                            double fps = 24.0);

std::string frame_file_name(std::size_t index);

}  // namespace relight
