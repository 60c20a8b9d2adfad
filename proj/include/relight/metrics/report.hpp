#pragma once

#include <optional>

#include "relight/metrics/ssim.hpp"
#include "relight/metrics/stability.hpp"

namespace relight {

/// Metric outputs for one candidate video, optionally against a reference.
struct EvalReport {
    StabilityParams params;
    StabilityReport candidate;
    std::optional<StabilityReport> reference;
    std::optional<double> ssim;
    std::optional<double> high_freq_ratio;
};

EvalReport evaluate(std::span<const Frame> candidate, std::span<const Frame> reference,
                    const StabilityParams& stability, const SsimParams& ssim_params);

std::vector<GrayFrame> to_grayscale(std::span<const Frame> frames);

}  // namespace relight
