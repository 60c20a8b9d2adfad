#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "relight/io/config.hpp"
#include "relight/metrics/report.hpp"

namespace relight {

/// Sigma given at `reference_height` rescaled to a frame of `height` rows.
double scale_sigma(double sigma, int height, int reference_height);

/// Relit video resized to cfg.working_height (aspect kept) when
/// cfg.downsample is set, unchanged otherwise.
std::vector<Frame> prepare_relit(std::span<const Frame> relit, const RunConfig& cfg);

std::vector<Frame> run_smooth(std::span<const Frame> frames, const RunConfig& cfg);

/// LAB detail fusion with sigma_illum scaled to the original's height.
std::vector<Frame> run_fuse(std::span<const Frame> original, std::span<const Frame> relit,
                            const RunConfig& cfg);

/// Resizes every frame to width x height (no-op when already that size).
std::vector<Frame> resize_all(std::span<const Frame> frames, int width, int height);

struct PipelineResult {
    std::vector<Frame> output;
    EvalReport report;        // output against the original
    EvalReport relit_report;  // raw relit (resized to the original) against the original
};

/// prepare_relit -> run_smooth -> run_fuse -> evaluate.
PipelineResult run_pipeline(std::span<const Frame> original, std::span<const Frame> relit,
                            const RunConfig& cfg);

nlohmann::json to_json(const PipelineResult& result);

}  // namespace relight
