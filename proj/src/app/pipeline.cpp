#include "relight/app/pipeline.hpp"

#include "relight/core/errors.hpp"
#include "relight/core/resample.hpp"
#include "relight/io/report_io.hpp"
#include "relight/temporal/smoother.hpp"

namespace relight {

double scale_sigma(double sigma, int height, int reference_height) {
    require(height > 0 && reference_height > 0, "scale_sigma: heights must be positive");
    return sigma * static_cast<double>(height) / static_cast<double>(reference_height);
}

std::vector<Frame> resize_all(std::span<const Frame> frames, int width, int height) {
    std::vector<Frame> out;
    out.reserve(frames.size());
    for (const Frame& f : frames) {
        out.push_back(f.width == width && f.height == height ? f : resize_bilinear(f, width, height));
    }
    return out;
}

std::vector<Frame> prepare_relit(std::span<const Frame> relit, const RunConfig& cfg) {
    if (!cfg.downsample || relit.empty()) return {relit.begin(), relit.end()};
    const Frame& first = relit.front();
    const int h = cfg.working_height;
    return resize_all(relit, scaled_width(first.width, first.height, h), h);
}

std::vector<Frame> run_smooth(std::span<const Frame> frames, const RunConfig& cfg) {
    return smooth_sequence(frames, cfg.flow, cfg.smoother, cfg.bilateral);
}

std::vector<Frame> run_fuse(std::span<const Frame> original, std::span<const Frame> relit,
                            const RunConfig& cfg) {
    require(!original.empty(), "fuse: empty original video");
    LabFuseConfig fuse = cfg.fusion;
    fuse.sigma_illum = scale_sigma(cfg.fusion.sigma_illum, original.front().height, cfg.reference_height);
    return fuse_sequence(original, relit, fuse);
}

PipelineResult run_pipeline(std::span<const Frame> original, std::span<const Frame> relit,
                            const RunConfig& cfg) {
    cfg.validate();
    require(!original.empty(), "pipeline: empty original video");
    require(original.size() == relit.size(), "pipeline: frame count mismatch between original and relit");

    const std::vector<Frame> working = prepare_relit(relit, cfg);
    const std::vector<Frame> smoothed = run_smooth(working, cfg);

    PipelineResult result;
    result.output = run_fuse(original, smoothed, cfg);
    result.report = evaluate(result.output, original, cfg.stability, cfg.ssim);

    const Frame& o = original.front();
    const std::vector<Frame> relit_full = resize_all(relit, o.width, o.height);
    result.relit_report = evaluate(relit_full, original, cfg.stability, cfg.ssim);
    return result;
}

nlohmann::json to_json(const PipelineResult& result) {
    nlohmann::json doc = to_json(result.report);
    doc["relit"] = to_json(result.relit_report);
    doc["relit"].erase("reference");
    return doc;
}

}  // namespace relight
