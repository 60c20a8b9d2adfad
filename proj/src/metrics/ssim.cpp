#include "relight/metrics/ssim.hpp"

#include <cmath>

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/filter.hpp"

namespace relight {

void SsimParams::validate() const {
    require(window >= 3 && window % 2 == 1, "ssim.window must be an odd integer >= 3");
    require(window_sigma > 0.0, "ssim.window_sigma must be > 0");
    require(c1 > 0.0 && c2 > 0.0 && c3 > 0.0, "ssim constants must be > 0");
}

double ssim(const GrayFrame& a, const GrayFrame& b, const SsimParams& params) {
    params.validate();
    require_same_dims(a, b, "ssim");
    const int w = a.width;
    const int h = a.height;
    const std::size_t n = a.size();
    require(n > 0, "ssim: empty frame");

    // Window taps, normalized over the fixed window (not ceil(3 sigma)).
    const int r = params.window / 2;
    std::vector<double> taps(static_cast<std::size_t>(params.window));
    double tsum = 0.0;
    for (int k = -r; k <= r; ++k) {
        taps[static_cast<std::size_t>(k + r)] = std::exp(-(k * k) / (2.0 * params.window_sigma * params.window_sigma));
        tsum += taps[static_cast<std::size_t>(k + r)];
    }
    for (double& t : taps) t /= tsum;

    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a.data[i];
        y[i] = b.data[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    auto blur = [&](const std::vector<double>& v) {
        return detail::separable_filter<double>(v, w, h, taps);
    };
    const auto mu_x = blur(x);
    const auto mu_y = blur(y);
    const auto e_xx = blur(xx);
    const auto e_yy = blur(yy);
    const auto e_xy = blur(xy);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double vx = std::max(0.0, e_xx[i] - mx * mx);
        const double vy = std::max(0.0, e_yy[i] - my * my);
        const double cov = e_xy[i] - mx * my;
        const double sx = std::sqrt(vx);
        const double sy = std::sqrt(vy);
        const double luminance = (2.0 * mx * my + params.c1) / (mx * mx + my * my + params.c1);
        const double contrast = (2.0 * sx * sy + params.c2) / (vx + vy + params.c2);
        const double structure = (cov + params.c3) / (sx * sy + params.c3);
        total += luminance * contrast * structure;
    }
    return total / static_cast<double>(n);
}

double ssim(const Frame& a, const Frame& b, const SsimParams& params) {
    return ssim(to_grayscale(a), to_grayscale(b), params);
}

double ssim_video(std::span<const Frame> a, std::span<const Frame> b, const SsimParams& params) {
    require(a.size() == b.size(), "ssim_video: frame count mismatch");
    require(!a.empty(), "ssim_video: no frames");
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += ssim(a[i], b[i], params);
    return total / static_cast<double>(a.size());
}

}  // namespace relight
