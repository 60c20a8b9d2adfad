#pragma once

#include <filesystem>

#include "relight/core/image.hpp"

namespace relight {

/// Decodes any 8- or 16-bit PNG to an RGB working-form frame. Alpha is
/// dropped, gray and palette images are expanded, 16-bit samples are
/// rescaled by 1/65535. Throws IoError.
Frame read_png(const std::filesystem::path& path);

/// Writes 8-bit RGB. Throws IoError.
void write_png(const Frame& frame, const std::filesystem::path& path);

/// 8-bit binary PGM (P5) of a plane, linearly mapped from [lo, hi] to 0..255.
void write_pgm(const Plane& plane, const std::filesystem::path& path, float lo, float hi);

}  // namespace relight
