#include "relight/core/filter.hpp"

#include <cmath>

#include "relight/core/errors.hpp"

namespace relight {

int GaussianKernel::default_radius(double sigma) {
    return std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
}

GaussianKernel::GaussianKernel(double sigma) : GaussianKernel(sigma, default_radius(sigma)) {}

GaussianKernel::GaussianKernel(double sigma, int radius) : sigma_(sigma), radius_(radius) {
    require(std::isfinite(sigma) && sigma > 0.0, "gaussian kernel: sigma must be > 0");
    require(radius >= default_radius(sigma), "gaussian kernel: radius must be >= ceil(3*sigma)");
    taps_.resize(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-(k * k) / (2.0 * sigma * sigma));
        taps_[static_cast<std::size_t>(k + radius)] = w;
        sum += w;
    }
    for (double& w : taps_) w /= sum;
}

Plane gaussian_blur(const Plane& channel, const GaussianKernel& kernel) {
    Plane out(channel.width, channel.height);
    if (channel.data.empty()) return out;
    out.data = detail::separable_filter<float>(channel.data, channel.width, channel.height,
                                               kernel.taps());
    return out;
}

Plane gaussian_blur(const Plane& channel, double sigma) {
    return gaussian_blur(channel, GaussianKernel(sigma));
}

Frame gaussian_blur(const Frame& frame, double sigma) {
    const GaussianKernel kernel(sigma);
    Frame out(frame.width, frame.height);
    for (int c = 0; c < Frame::kChannels; ++c) out.set_channel(c, gaussian_blur(frame.channel(c), kernel));
    return out;
}

Plane box_filter(const Plane& channel, int radius) {
    require(radius >= 0, "box filter: radius must be >= 0");
    const std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1), 1.0 / (2 * radius + 1));
    Plane out(channel.width, channel.height);
    if (channel.data.empty()) return out;
    out.data = detail::separable_filter<float>(channel.data, channel.width, channel.height, taps);
    return out;
}

}  // namespace relight
