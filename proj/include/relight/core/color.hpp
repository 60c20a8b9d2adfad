#pragma once

#include <array>

#include "relight/core/image.hpp"

namespace relight {

// Rec.601 luma weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

inline float luma(float r, float g, float b) noexcept {
    return static_cast<float>(kLumaR * r + kLumaG * g + kLumaB * b);
}

GrayFrame to_grayscale(const Frame& frame);

/// sRGB (D65) <-> CIELAB for a single pixel. RGB in [0,1].
std::array<double, 3> srgb_to_lab(double r, double g, double b) noexcept;
/// Out-of-gamut results are clamped to [0,1] per channel.
std::array<double, 3> lab_to_srgb(double L, double a, double b) noexcept;

LabFrame rgb_to_lab(const Frame& frame);
Frame lab_to_rgb(const LabFrame& lab);

}  // namespace relight
