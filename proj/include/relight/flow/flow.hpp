#pragma once

#include <filesystem>

#include "relight/core/image.hpp"

namespace relight {

/// Per-pixel displacement from one frame to the next, in pixels.
/// A point at p in the earlier frame appears at p + (u, v) in the later one.
struct FlowField {
    int width = 0;
    int height = 0;
    Plane u;
    Plane v;

    FlowField() = default;
    FlowField(int w, int h) : width(w), height(h), u(w, h), v(w, h) {}
};

/// Polynomial-expansion flow parameters. Defaults follow the common Farneback
/// settings (3 levels, 0.5 scale, 15 px window, 3 iterations, 5 / 1.1).
struct FlowParams {
    int pyramid_levels = 3;
    double pyramid_scale = 0.5;
    int window_size = 15;
    int iterations = 3;
    int poly_n = 5;
    double poly_sigma = 1.1;

    void validate() const;
};

/// Dense flow from prev to curr: coarse-to-fine polynomial expansion with
/// iterative displacement refinement. Throws ValidationError on size mismatch
/// or when a frame is smaller than the analysis window.
FlowField estimate_flow(const GrayFrame& prev, const GrayFrame& curr,
                        const FlowParams& params = {});

/// Backward warp: out(x, y) = frame(x - u, y - v), bilinear, edge-replicated.
Frame warp_frame(const Frame& frame, const FlowField& flow);
Plane warp_plane(const Plane& plane, const FlowField& flow);

Plane flow_magnitude(const FlowField& flow);

// Debug dump: "HLFL", u32 width, u32 height, then u and v planes as
// little-endian f32, row-major.
void save_flow(const FlowField& flow, const std::filesystem::path& path);
FlowField load_flow(const std::filesystem::path& path);

}  // namespace relight
