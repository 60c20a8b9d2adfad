#include <cmath>

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/parallel.hpp"
#include "relight/temporal/smoother.hpp"

namespace relight {

void BilateralParams::validate() const {
    require(sigma_spatial > 0.0, "bilateral.sigma_spatial must be > 0");
    require(sigma_range > 0.0, "bilateral.sigma_range must be > 0");
    require(radius >= 1, "bilateral.radius must be >= 1");
    require(radius >= static_cast<int>(std::ceil(2.0 * sigma_spatial)),
            "bilateral.radius must be >= ceil(2*sigma_spatial)");
}

Frame bilateral_filter(const Frame& frame, const BilateralParams& params) {
    params.validate();
    const int w = frame.width;
    const int h = frame.height;
    const int r = params.radius;
    const int side = 2 * r + 1;

    std::vector<double> spatial(static_cast<std::size_t>(side * side));
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            spatial[static_cast<std::size_t>((dy + r) * side + dx + r)] =
                std::exp(-(dx * dx + dy * dy) / (2.0 * params.sigma_spatial * params.sigma_spatial));
        }
    }
    const double range_coeff = -1.0 / (2.0 * params.sigma_range * params.sigma_range);
    const GrayFrame gray = to_grayscale(frame);

    Frame out(w, h);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const double center = gray.at(x, y);
            double wsum = 0.0;
            double acc[3] = {0.0, 0.0, 0.0};
            for (int dy = -r; dy <= r; ++dy) {
                const int yy = std::clamp(y + dy, 0, h - 1);
                const double* srow = spatial.data() + static_cast<std::size_t>((dy + r) * side + r);
                for (int dx = -r; dx <= r; ++dx) {
                    const int xx = std::clamp(x + dx, 0, w - 1);
                    const double diff = gray.at(xx, yy) - center;
                    const double wt = srow[dx] * std::exp(range_coeff * diff * diff);
                    const float* q = frame.data.data() + frame.index(xx, yy, 0);
                    acc[0] += wt * q[0];
                    acc[1] += wt * q[1];
                    acc[2] += wt * q[2];
                    wsum += wt;
                }
            }
            out.set_pixel(x, y, static_cast<float>(acc[0] / wsum), static_cast<float>(acc[1] / wsum),
                          static_cast<float>(acc[2] / wsum));
        }
    });
    return out;
}

}  // namespace relight
