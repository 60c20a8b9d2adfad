#pragma once

#include <span>

#include "relight/core/image.hpp"

namespace relight {

/// Gaussian-window SSIM constants; dynamic range 1.0 (working form).
struct SsimParams {
    int window = 11;
    double window_sigma = 1.5;
    double c1 = 0.01 * 0.01;
    double c2 = 0.03 * 0.03;
    double c3 = 0.03 * 0.03 / 2.0;

    void validate() const;
};

/// Per-position luminance, contrast and structure comparison averaged over
/// every pixel (edge-replicated windows). Grayscale only.
double ssim(const GrayFrame& a, const GrayFrame& b, const SsimParams& params = {});
double ssim(const Frame& a, const Frame& b, const SsimParams& params = {});

/// Mean of per-frame SSIM.
double ssim_video(std::span<const Frame> a, std::span<const Frame> b, const SsimParams& params = {});

}  // namespace relight
