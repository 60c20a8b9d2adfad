#pragma once

#include <deque>
#include <span>
#include <vector>

#include "relight/core/image.hpp"
#include "relight/flow/flow.hpp"

namespace relight {

struct SmootherConfig {
    double alpha_base = 0.9;
    bool adaptive = true;
    double motion_scale = 4.0;  // flow magnitude (px) at which the adaptive part halves
    double alpha_floor = 0.1;
    int window_size = 5;        // history length in frames
    double window_decay = 0.5;  // weight ratio between consecutive history frames

    void validate() const;
};

/// Edge-preserving filter parameters. Range distances are measured on the
/// [0,1] grayscale.
struct BilateralParams {
    double sigma_spatial = 3.0;
    double sigma_range = 0.08;
    int radius = 6;

    void validate() const;
};

/// alpha(p) = floor + (base - floor) * 2^(-|flow(p)| / motion_scale), or the
/// constant `alpha_base` when adaptation is off.
Plane adaptive_alpha(double alpha_base, const Plane& motion_mag, const SmootherConfig& cfg);

/// alpha * warped + (1 - alpha) * current, per pixel and channel.
Frame temporal_blend(const Frame& warped_history, const Frame& current, const Plane& alpha_map);

/// Normalized weighted average of `history` (most recent first) with weights
/// window_decay^k. Frames beyond cfg.window_size are ignored.
Frame history_reference(std::span<const Frame> history, const SmootherConfig& cfg);

struct WeightedFrame {
    const Frame* frame;
    double weight;
};
/// Normalized weighted average with explicit weights.
Frame history_reference(std::span<const WeightedFrame> history);

Frame bilateral_filter(const Frame& frame, const BilateralParams& params);

/// Running motion-compensated smoother. Owns its history; feed frames in
/// order with push().
class TemporalSmoother {
public:
    TemporalSmoother(FlowParams flow, SmootherConfig cfg, BilateralParams bilateral);

    /// Returns the smoothed (blended + bilateral-filtered) version of `frame`.
    Frame push(const Frame& frame);

    // Post-blend, pre-bilateral frames, most recent first, each in the
    // coordinates of the latest frame.
    const std::deque<Frame>& history() const noexcept { return history_; }

private:
    FlowParams flow_params_;
    SmootherConfig cfg_;
    BilateralParams bilateral_;
    std::deque<Frame> history_;
    GrayFrame prev_gray_;
};

std::vector<Frame> smooth_sequence(std::span<const Frame> frames, const FlowParams& flow_params,
                                   const SmootherConfig& cfg, const BilateralParams& bilateral);

}  // namespace relight
