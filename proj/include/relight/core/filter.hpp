#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "relight/core/image.hpp"
#include "relight/core/parallel.hpp"

namespace relight {

/// Normalized, symmetric 1D Gaussian taps; the 2D kernel is their outer
/// product. Radius defaults to ceil(3 sigma).
class GaussianKernel {
public:
    explicit GaussianKernel(double sigma);
    GaussianKernel(double sigma, int radius);

    double sigma() const noexcept { return sigma_; }
    int radius() const noexcept { return radius_; }
    std::span<const double> taps() const noexcept { return taps_; }
    double tap(int offset) const { return taps_[static_cast<std::size_t>(offset + radius_)]; }
    // Center weight of the 2D kernel.
    double peak() const noexcept { return tap(0) * tap(0); }

    static int default_radius(double sigma);

private:
    double sigma_;
    int radius_;
    std::vector<double> taps_;
};

Plane gaussian_blur(const Plane& channel, const GaussianKernel& kernel);
Plane gaussian_blur(const Plane& channel, double sigma);
Frame gaussian_blur(const Frame& frame, double sigma);

// Mean over a (2r+1)^2 window, edge-replicated.
Plane box_filter(const Plane& channel, int radius);

namespace detail {

// Separable correlation with symmetric taps and edge replication. The
// accumulator precision is that of T; callers needing double-precision
// moments (SSIM) instantiate with double.
template <typename T>
std::vector<T> separable_filter(std::span<const T> src, int width, int height,
                                std::span<const double> taps) {
    const int radius = static_cast<int>(taps.size() / 2);
    std::vector<T> tmp(src.size());
    std::vector<T> out(src.size());
    parallel_rows(height, [&](int y) {
        const T* row = src.data() + static_cast<std::size_t>(y) * width;
        T* dst = tmp.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int xx = std::clamp(x + k, 0, width - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] * static_cast<double>(row[xx]);
            }
            dst[x] = static_cast<T>(acc);
        }
    });
    parallel_rows(height, [&](int y) {
        T* dst = out.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int yy = std::clamp(y + k, 0, height - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       static_cast<double>(tmp[static_cast<std::size_t>(yy) * width + x]);
            }
            dst[x] = static_cast<T>(acc);
        }
    });
    return out;
}

}  // namespace detail

}  // namespace relight
