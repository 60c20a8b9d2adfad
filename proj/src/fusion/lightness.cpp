#include <algorithm>

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/filter.hpp"
#include "relight/fusion/fusion.hpp"

namespace relight {

double GuidanceSchedule::lambda_at(int step, int total_steps) {
    return 1.0 - static_cast<double>(step) / static_cast<double>(total_steps);
}

void GuidanceSchedule::validate() const {
    require(total_steps >= 1, "steps must be >= 1");
    require(step >= 0 && step <= total_steps, "guidance step must be in [0, steps]");
    require(sigma_prior > 0.0, "sigma_prior must be > 0");
}

std::vector<Frame> GaussianDenoiser::denoise(std::vector<Frame> frames, int) {
    for (Frame& f : frames) f = gaussian_blur(f, sigma_);
    return frames;
}

LightnessResidual lightness_residual(const Frame& input_frame, double sigma_prior) {
    const LabFrame lab = rgb_to_lab(input_frame);
    const Plane low = gaussian_blur(lab.L, sigma_prior);
    LightnessResidual r{input_frame.width, input_frame.height, Plane(input_frame.width, input_frame.height)};
    for (std::size_t i = 0; i < low.size(); ++i) r.delta_l.data[i] = lab.L.data[i] - low.data[i];
    return r;
}

Frame anchor_lightness(const Frame& frame, const LightnessResidual& residual, double gamma) {
    require_same_dims(frame, residual, "anchor_lightness");
    if (gamma == 0.0) return frame;
    LabFrame lab = rgb_to_lab(frame);
    for (std::size_t i = 0; i < lab.L.size(); ++i) {
        lab.L.data[i] = std::clamp(lab.L.data[i] + static_cast<float>(gamma) * residual.delta_l.data[i], 0.0f, 100.0f);
    }
    return lab_to_rgb(lab);
}

Frame progressive_fuse(const Frame& consistent, const Frame& relit_target, double lambda, GuidanceMode mode) {
    require_same_dims(consistent, relit_target, "progressive_fuse");
    Frame out(consistent.width, consistent.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double c = consistent.data[i];
        const double r = relit_target.data[i];
        const double v = mode == GuidanceMode::convex ? c + lambda * (r - c) : c + lambda * (c - r);
        out.data[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
    return out;
}

std::vector<Frame> progressive_fuse(std::span<const Frame> consistent, std::span<const Frame> relit_target,
                                    const GuidanceSchedule& schedule) {
    schedule.validate();
    require(consistent.size() == relit_target.size(), "progressive_fuse: frame count mismatch");
    std::vector<Frame> out;
    out.reserve(consistent.size());
    const double lambda = schedule.lambda();
    for (std::size_t i = 0; i < consistent.size(); ++i) {
        out.push_back(progressive_fuse(consistent[i], relit_target[i], lambda, schedule.mode));
    }
    return out;
}

std::vector<Frame> guidance_loop(std::span<const Frame> input_video, std::span<const Frame> relit_target,
                                 Denoiser& denoiser, const GuidanceSchedule& schedule) {
    schedule.validate();
    require(input_video.size() == relit_target.size(), "guidance_loop: frame count mismatch");
    require(!input_video.empty(), "guidance_loop: no frames");

    // Computed once from the untouched input; reused unchanged at every step.
    std::vector<LightnessResidual> residuals;
    residuals.reserve(input_video.size());
    for (const Frame& f : input_video) residuals.push_back(lightness_residual(f, schedule.sigma_prior));

    std::vector<Frame> consistent(input_video.begin(), input_video.end());
    for (int t = 0; t < schedule.total_steps; ++t) {
        GuidanceSchedule at = schedule;
        at.step = t;
        std::vector<Frame> fused = progressive_fuse(consistent, relit_target, at);
        for (std::size_t i = 0; i < fused.size(); ++i) {
            fused[i] = anchor_lightness(fused[i], residuals[i], schedule.gamma);
        }
        std::vector<Frame> next = denoiser.denoise(std::move(fused), t);
        require(next.size() == input_video.size(), "guidance_loop: denoiser changed the frame count");
        for (std::size_t i = 0; i < next.size(); ++i) {
            require_same_dims(next[i], input_video[i], "guidance_loop: denoiser output");
        }
        consistent = std::move(next);
    }
    return consistent;
}

}  // namespace relight
