#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relight/core/image.hpp"

namespace relight {

/// One scalar per frame.
struct TimeSeries {
    std::vector<double> values;
    std::string label;
};

struct StabilityParams {
    double tau = 125.0;  // brightness threshold on the 0..255 scale
    double k_I = 20.0;
    double k_C = 20.0;
    double k_dI = 5.0;

    void validate() const;
};

struct SmoothnessScore {
    double score = 1.0;
    double u_norm = 0.0;
};

struct StabilityReport {
    double s_I = 1.0;
    double s_C = 1.0;
    double s_dI = 1.0;
    double s_LS = 1.0;
    double u_norm_I = 0.0;
    double u_norm_C = 0.0;
    double u_norm_dI = 0.0;
    TimeSeries intensity;   // I_t
    TimeSeries count;       // C_t
    TimeSeries derivative;  // dI_t, one shorter than the others
};

struct BrightSignals {
    TimeSeries intensity;
    TimeSeries count;
};

// Converts a [0,1] gray value to the 0..255 scale the brightness threshold is
// expressed in. No rounding: working-form values are not quantized.
inline double to_8bit_scale(float gray) noexcept { return static_cast<double>(gray) * 255.0; }

/// Per frame: C_t = number of pixels >= tau, I_t = their mean value on the
/// 0..255 scale (0 when no pixel qualifies).
BrightSignals bright_signals(std::span<const GrayFrame> frames, double tau);

/// s[i+1] - s[i]. Throws ValidationError when fewer than 2 samples.
TimeSeries derivative_series(const TimeSeries& s);

/// M = mean |s[i+1] - s[i]|, R = max - min, U = M / R, score = exp(-k U).
/// A constant series scores 1. Throws ValidationError when fewer than 2 samples.
SmoothnessScore smoothness_score(const TimeSeries& s, double k);

/// Light Stability Score: mean of the I_t, C_t and dI_t smoothness scores.
/// Requires at least 3 frames.
StabilityReport light_stability_score(std::span<const GrayFrame> frames,
                                      const StabilityParams& params = {});

struct TauScore {
    double tau;
    double s_LS;
};

/// S_LS at each threshold in `taus` (other parameters from `params`).
std::vector<TauScore> tau_sensitivity(std::span<const GrayFrame> frames, std::span<const double> taus,
                                      const StabilityParams& params = {});

/// 1-based ranks of `scores` in descending order (ties share the lower rank).
std::vector<int> rank_descending(std::span<const double> scores);

inline const std::vector<double> kDefaultTauSweep{105.0, 115.0, 125.0, 135.0, 145.0};

/// Counts over all frames of 0..255-scale gray values in `bins` equal bins.
/// `bins` must divide 256.
std::vector<std::uint64_t> brightness_histogram(std::span<const GrayFrame> frames, int bins);

}  // namespace relight
