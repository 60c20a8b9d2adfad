#pragma once

#include <span>
#include <vector>

#include "relight/core/image.hpp"

namespace relight {

// ---------------------------------------------------------------------------
// Lightness prior and progressive guidance
// ---------------------------------------------------------------------------

/// High-pass of the input's L channel: L - G_sigma * L, in L units.
struct LightnessResidual {
    int width = 0;
    int height = 0;
    Plane delta_l;
};

/// How a guidance step mixes the current video with the relit target.
///   convex:  fused = current + lambda * (target - current)
///   literal: fused = current + lambda * (current - target)
/// Both are clamped to [0,1].
enum class GuidanceMode { convex, literal };

/// Linear guidance decay lambda_t = 1 - t / total_steps.
struct GuidanceSchedule {
    int total_steps = 25;
    int step = 0;
    double gamma = 0.3;
    double sigma_prior = 5.0;
    GuidanceMode mode = GuidanceMode::convex;

    static double lambda_at(int step, int total_steps);
    double lambda() const { return lambda_at(step, total_steps); }
    void validate() const;
};

/// Refines a fused video at a guidance step. Implementations must return
/// frames of the same count and size.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual std::vector<Frame> denoise(std::vector<Frame> frames, int step) = 0;
};

class IdentityDenoiser final : public Denoiser {
public:
    std::vector<Frame> denoise(std::vector<Frame> frames, int) override { return frames; }
};

/// Per-frame Gaussian blur; stands in for a learned denoiser.
class GaussianDenoiser final : public Denoiser {
public:
    explicit GaussianDenoiser(double sigma = 1.0) : sigma_(sigma) {}
    std::vector<Frame> denoise(std::vector<Frame> frames, int step) override;

private:
    double sigma_;
};

LightnessResidual lightness_residual(const Frame& input_frame, double sigma_prior);

/// Adds gamma * delta_l to the frame's L channel (clamped to [0,100]);
/// chroma is kept. gamma == 0 returns the frame untouched.
Frame anchor_lightness(const Frame& frame, const LightnessResidual& residual, double gamma);

Frame progressive_fuse(const Frame& consistent, const Frame& relit_target, double lambda,
                       GuidanceMode mode);
std::vector<Frame> progressive_fuse(std::span<const Frame> consistent, std::span<const Frame> relit_target,
                                    const GuidanceSchedule& schedule);

/// For t = 0 .. T-1: fuse toward the relit target at lambda_t, anchor the
/// static lightness residual of `input_video`, then denoise. Starts from the
/// input video. Returns the final consistent video.
std::vector<Frame> guidance_loop(std::span<const Frame> input_video, std::span<const Frame> relit_target,
                                 Denoiser& denoiser, const GuidanceSchedule& schedule);

// ---------------------------------------------------------------------------
// LAB detail-preserving fusion
// ---------------------------------------------------------------------------

/// mean_compensated: L' = L_in + beta * (G*L_relit - G*L_in)
/// literal:          L' = L_in + beta * (G*L_relit)
enum class LabFuseMode { mean_compensated, literal };

struct LabFuseConfig {
    double beta = 0.3;
    double sigma_illum = 15.0;  // pixels
    LabFuseMode mode = LabFuseMode::mean_compensated;

    void validate() const;
};

/// Input lightness with the relit frame's low-frequency illumination, and the
/// relit frame's chroma.
Frame lab_detail_fuse(const Frame& input_frame, const Frame& relit_frame, const LabFuseConfig& cfg);

/// Per-frame lab_detail_fuse; relit frames are resized to the input size first.
std::vector<Frame> fuse_sequence(std::span<const Frame> input_video, std::span<const Frame> relit_video,
                                 const LabFuseConfig& cfg);

}  // namespace relight
