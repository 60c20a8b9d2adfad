#include "relight/core/resample.hpp"

#include <algorithm>
#include <cmath>

#include "relight/core/errors.hpp"
#include "relight/core/parallel.hpp"

namespace relight {

namespace {

struct Tap {
    int i0;
    int i1;
    float frac;
};

// Pixel-center aligned source coordinate for each destination index.
std::vector<Tap> resize_taps(int src, int dst) {
    std::vector<Tap> taps(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
        const double s = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
        const int i0 = static_cast<int>(std::floor(s));
        const int i1 = std::min(i0 + 1, src - 1);
        taps[static_cast<std::size_t>(i)] = {i0, i1, static_cast<float>(s - i0)};
    }
    return taps;
}

void check_target(int w, int h) {
    if (w < 1 || h < 1) throw ValidationError("resize: target dimensions must be >= 1");
}

}  // namespace

float sample_bilinear(const Plane& plane, double x, double y) noexcept {
    x = std::clamp(x, 0.0, static_cast<double>(plane.width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(plane.height - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, plane.width - 1);
    const int y1 = std::min(y0 + 1, plane.height - 1);
    const float fx = static_cast<float>(x - x0);
    const float fy = static_cast<float>(y - y0);
    const float p00 = plane.at(x0, y0);
    const float p10 = plane.at(x1, y0);
    const float p01 = plane.at(x0, y1);
    const float p11 = plane.at(x1, y1);
    const float top = p00 + fx * (p10 - p00);
    const float bottom = p01 + fx * (p11 - p01);
    return top + fy * (bottom - top);
}

Plane resize_bilinear(const Plane& plane, int new_width, int new_height) {
    check_target(new_width, new_height);
    if (new_width == plane.width && new_height == plane.height) return plane;
    const auto xs = resize_taps(plane.width, new_width);
    const auto ys = resize_taps(plane.height, new_height);
    Plane out(new_width, new_height);
    parallel_rows(new_height, [&](int y) {
        const Tap& ty = ys[static_cast<std::size_t>(y)];
        for (int x = 0; x < new_width; ++x) {
            const Tap& tx = xs[static_cast<std::size_t>(x)];
            const float top = plane.at(tx.i0, ty.i0) + tx.frac * (plane.at(tx.i1, ty.i0) - plane.at(tx.i0, ty.i0));
            const float bot = plane.at(tx.i0, ty.i1) + tx.frac * (plane.at(tx.i1, ty.i1) - plane.at(tx.i0, ty.i1));
            out.at(x, y) = top + ty.frac * (bot - top);
        }
    });
    return out;
}

Frame resize_bilinear(const Frame& frame, int new_width, int new_height) {
    check_target(new_width, new_height);
    if (new_width == frame.width && new_height == frame.height) return frame;
    Frame out(new_width, new_height);
    for (int c = 0; c < Frame::kChannels; ++c) {
        out.set_channel(c, resize_bilinear(frame.channel(c), new_width, new_height));
    }
    return out;
}

int scaled_width(int width, int height, int target_height) {
    const double w = static_cast<double>(width) * target_height / height;
    return std::max(2, static_cast<int>(std::lround(w / 2.0)) * 2);
}

}  // namespace relight
