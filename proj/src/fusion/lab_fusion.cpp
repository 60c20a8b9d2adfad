#include <algorithm>

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/filter.hpp"
#include "relight/core/resample.hpp"
#include "relight/fusion/fusion.hpp"

namespace relight {

void LabFuseConfig::validate() const {
    require(beta >= 0.0 && beta <= 1.0, "beta must be in [0,1]");
    require(sigma_illum > 0.0, "sigma_illum must be > 0");
}

Frame lab_detail_fuse(const Frame& input_frame, const Frame& relit_frame, const LabFuseConfig& cfg) {
    cfg.validate();
    require_same_dims(input_frame, relit_frame, "lab_detail_fuse");
    const LabFrame in = rgb_to_lab(input_frame);
    LabFrame relit = rgb_to_lab(relit_frame);
    const GaussianKernel kernel(cfg.sigma_illum);

    Plane transfer;
    if (cfg.mode == LabFuseMode::mean_compensated) {
        // Blur is linear: G*Lr - G*Li == G*(Lr - Li).
        Plane diff(in.width, in.height);
        for (std::size_t i = 0; i < diff.size(); ++i) diff.data[i] = relit.L.data[i] - in.L.data[i];
        transfer = gaussian_blur(diff, kernel);
    } else {
        transfer = gaussian_blur(relit.L, kernel);
    }

    const float beta = static_cast<float>(cfg.beta);
    for (std::size_t i = 0; i < transfer.size(); ++i) {
        relit.L.data[i] = std::clamp(in.L.data[i] + beta * transfer.data[i], 0.0f, 100.0f);
    }
    return lab_to_rgb(relit);
}

std::vector<Frame> fuse_sequence(std::span<const Frame> input_video, std::span<const Frame> relit_video,
                                 const LabFuseConfig& cfg) {
    require(input_video.size() == relit_video.size(), "fuse_sequence: frame count mismatch");
    std::vector<Frame> out;
    out.reserve(input_video.size());
    for (std::size_t i = 0; i < input_video.size(); ++i) {
        const Frame& in = input_video[i];
        const Frame& relit = relit_video[i];
        if (same_dims(in, relit)) {
            out.push_back(lab_detail_fuse(in, relit, cfg));
        } else {
            out.push_back(lab_detail_fuse(in, resize_bilinear(relit, in.width, in.height), cfg));
        }
    }
    return out;
}

}  // namespace relight
