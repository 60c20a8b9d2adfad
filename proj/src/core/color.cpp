#include "relight/core/color.hpp"

#include <algorithm>
#include <cmath>

#include "relight/core/parallel.hpp"

namespace relight {

namespace {

// D65 reference white, Y normalized to 1.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

double lab_f_inv(double f) {
    const double f3 = f * f * f;
    return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

}  // namespace

GrayFrame to_grayscale(const Frame& frame) {
    GrayFrame g(frame.width, frame.height);
    const std::size_t n = frame.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const float* p = frame.data.data() + i * Frame::kChannels;
        g.data[i] = luma(p[0], p[1], p[2]);
    }
    return g;
}

std::array<double, 3> srgb_to_lab(double r, double g, double b) noexcept {
    const double lr = srgb_to_linear(r);
    const double lg = srgb_to_linear(g);
    const double lb = srgb_to_linear(b);

    const double x = 0.4124564 * lr + 0.3575761 * lg + 0.1804375 * lb;
    const double y = 0.2126729 * lr + 0.7151522 * lg + 0.0721750 * lb;
    const double z = 0.0193339 * lr + 0.1191920 * lg + 0.9503041 * lb;

    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> lab_to_srgb(double L, double a, double b) noexcept {
    const double fy = (L + 16.0) / 116.0;
    const double fx = fy + a / 500.0;
    const double fz = fy - b / 200.0;

    const double x = kWhiteX * lab_f_inv(fx);
    const double y = kWhiteY * lab_f_inv(fy);
    const double z = kWhiteZ * lab_f_inv(fz);

    const double lr = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double lg = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double lb = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;

    auto encode = [](double c) { return std::clamp(linear_to_srgb(std::clamp(c, 0.0, 1.0)), 0.0, 1.0); };
    return {encode(lr), encode(lg), encode(lb)};
}

LabFrame rgb_to_lab(const Frame& frame) {
    LabFrame lab(frame.width, frame.height);
    parallel_rows(frame.height, [&](int y) {
        for (int x = 0; x < frame.width; ++x) {
            const auto v = srgb_to_lab(frame.at(x, y, 0), frame.at(x, y, 1), frame.at(x, y, 2));
            const std::size_t i = lab.L.index(x, y);
            lab.L.data[i] = static_cast<float>(v[0]);
            lab.a.data[i] = static_cast<float>(v[1]);
            lab.b.data[i] = static_cast<float>(v[2]);
        }
    });
    return lab;
}

Frame lab_to_rgb(const LabFrame& lab) {
    Frame frame(lab.width, lab.height);
    parallel_rows(lab.height, [&](int y) {
        for (int x = 0; x < lab.width; ++x) {
            const std::size_t i = lab.L.index(x, y);
            const auto c = lab_to_srgb(lab.L.data[i], lab.a.data[i], lab.b.data[i]);
            frame.set_pixel(x, y, static_cast<float>(c[0]), static_cast<float>(c[1]),
                            static_cast<float>(c[2]));
        }
    });
    return frame;
}

}  // namespace relight
