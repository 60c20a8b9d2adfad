#include "relight/temporal/smoother.hpp"

#include <cmath>

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/parallel.hpp"

namespace relight {

void SmootherConfig::validate() const {
    require(alpha_base >= 0.0 && alpha_base <= 1.0, "alpha_base must be in [0,1]");
    require(alpha_floor >= 0.0 && alpha_floor <= alpha_base, "alpha_floor must be in [0, alpha_base]");
    require(motion_scale > 0.0, "motion_scale must be > 0");
    require(window_size >= 1, "window_size must be >= 1");
    require(window_decay > 0.0 && window_decay <= 1.0, "window_decay must be in (0,1]");
}

Plane adaptive_alpha(double alpha_base, const Plane& motion_mag, const SmootherConfig& cfg) {
    Plane alpha(motion_mag.width, motion_mag.height, static_cast<float>(alpha_base));
    if (!cfg.adaptive) return alpha;
    const double floor = std::min(cfg.alpha_floor, alpha_base);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double m = std::max(0.0f, motion_mag.data[i]);
        alpha.data[i] = static_cast<float>(floor + (alpha_base - floor) * std::exp2(-m / cfg.motion_scale));
    }
    return alpha;
}

Frame temporal_blend(const Frame& warped_history, const Frame& current, const Plane& alpha_map) {
    require_same_dims(warped_history, current, "temporal_blend");
    require_same_dims(current, alpha_map, "temporal_blend alpha map");
    Frame out(current.width, current.height);
    const std::size_t n = current.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const float a = alpha_map.data[i];
        for (int c = 0; c < Frame::kChannels; ++c) {
            const std::size_t j = i * Frame::kChannels + static_cast<std::size_t>(c);
            out.data[j] = a * warped_history.data[j] + (1.0f - a) * current.data[j];
        }
    }
    return out;
}

Frame history_reference(std::span<const WeightedFrame> history) {
    require(!history.empty(), "history_reference: empty history");
    const Frame& first = *history.front().frame;
    double total = 0.0;
    for (const auto& h : history) {
        require_same_dims(first, *h.frame, "history_reference");
        require(h.weight >= 0.0, "history_reference: negative weight");
        total += h.weight;
    }
    require(total > 0.0, "history_reference: weights sum to zero");
    if (history.size() == 1) return first;

    Frame out(first.width, first.height);
    std::vector<double> acc(first.data.size(), 0.0);
    for (const auto& h : history) {
        const double wgt = h.weight / total;
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += wgt * h.frame->data[j];
    }
    for (std::size_t j = 0; j < acc.size(); ++j) out.data[j] = static_cast<float>(acc[j]);
    return out;
}

Frame history_reference(std::span<const Frame> history, const SmootherConfig& cfg) {
    require(!history.empty(), "history_reference: empty history");
    const std::size_t n = std::min(history.size(), static_cast<std::size_t>(cfg.window_size));
    std::vector<WeightedFrame> weighted;
    weighted.reserve(n);
    double wgt = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        weighted.push_back({&history[k], wgt});
        wgt *= cfg.window_decay;
    }
    return history_reference(std::span<const WeightedFrame>(weighted));
}

TemporalSmoother::TemporalSmoother(FlowParams flow, SmootherConfig cfg, BilateralParams bilateral)
    : flow_params_(flow), cfg_(cfg), bilateral_(bilateral) {
    flow_params_.validate();
    cfg_.validate();
    bilateral_.validate();
}

Frame TemporalSmoother::push(const Frame& frame) {
    GrayFrame gray = to_grayscale(frame);
    if (history_.empty()) {
        history_.push_front(frame);
        prev_gray_ = std::move(gray);
        return bilateral_filter(frame, bilateral_);
    }
    require_same_dims(history_.front(), frame, "smooth_sequence: inconsistent frame size");

    // prev -> curr flow, sampled at previous-frame pixels. Near fast motion
    // boundaries this misplaces the warp a little; the adaptive alpha is what
    // keeps that from showing up as a trail.
    const FlowField flow = estimate_flow(prev_gray_, gray, flow_params_);
    // Re-warp every stored frame into the current frame's coordinates.
    for (Frame& h : history_) h = warp_frame(h, flow);
    std::vector<WeightedFrame> weighted;
    double wgt = 1.0;
    for (const Frame& h : history_) {
        weighted.push_back({&h, wgt});
        wgt *= cfg_.window_decay;
    }
    const Frame reference = history_reference(std::span<const WeightedFrame>(weighted));
    const Plane alpha = adaptive_alpha(cfg_.alpha_base, flow_magnitude(flow), cfg_);
    Frame blended = temporal_blend(reference, frame, alpha);

    history_.push_front(blended);
    while (history_.size() > static_cast<std::size_t>(cfg_.window_size)) history_.pop_back();
    prev_gray_ = std::move(gray);
    return bilateral_filter(blended, bilateral_);
}

std::vector<Frame> smooth_sequence(std::span<const Frame> frames, const FlowParams& flow_params,
                                   const SmootherConfig& cfg, const BilateralParams& bilateral) {
    require(!frames.empty(), "smooth_sequence: no frames");
    for (const Frame& f : frames) require_same_dims(frames.front(), f, "smooth_sequence: inconsistent frame size");
    TemporalSmoother smoother(flow_params, cfg, bilateral);
    std::vector<Frame> out;
    out.reserve(frames.size());
    for (const Frame& f : frames) out.push_back(smoother.push(f));
    return out;
}

}  // namespace relight
