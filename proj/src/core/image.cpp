#include "relight/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relight/core/errors.hpp"

namespace relight {

namespace {

std::size_t checked_area(int w, int h) {
    if (w < 0 || h < 0) throw ValidationError("image dimensions must be non-negative");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
}

}  // namespace

Plane::Plane(int w, int h, float fill) : width(w), height(h), data(checked_area(w, h), fill) {}

float Plane::clamped(int x, int y) const {
    return at(std::clamp(x, 0, width - 1), std::clamp(y, 0, height - 1));
}

float Plane::min_value() const { return *std::min_element(data.begin(), data.end()); }
float Plane::max_value() const { return *std::max_element(data.begin(), data.end()); }

double Plane::mean() const {
    if (data.empty()) return 0.0;
    double s = 0.0;
    for (float v : data) s += v;
    return s / static_cast<double>(data.size());
}

Frame::Frame(int w, int h, float fill)
    : width(w), height(h), data(checked_area(w, h) * kChannels, fill) {}

Frame Frame::from_8bit(int w, int h, std::span<const std::uint8_t> rgb) {
    Frame f(w, h);
    if (rgb.size() != f.data.size()) throw ValidationError("8-bit buffer size does not match frame");
    std::transform(rgb.begin(), rgb.end(), f.data.begin(),
                   [](std::uint8_t v) { return static_cast<float>(v) / 255.0f; });
    return f;
}

std::vector<std::uint8_t> Frame::to_8bit() const {
    std::vector<std::uint8_t> out(data.size());
    std::transform(data.begin(), data.end(), out.begin(), [](float v) {
        const float c = std::clamp(v, 0.0f, 1.0f);
        return static_cast<std::uint8_t>(std::lround(c * 255.0f));
    });
    return out;
}

void Frame::set_pixel(int x, int y, float r, float g, float b) {
    const std::size_t i = index(x, y, 0);
    data[i] = r;
    data[i + 1] = g;
    data[i + 2] = b;
}

Plane Frame::channel(int c) const {
    Plane p(width, height);
    for (std::size_t i = 0; i < pixel_count(); ++i) p.data[i] = data[i * kChannels + c];
    return p;
}

void Frame::set_channel(int c, const Plane& p) {
    require_same_dims(*this, p, "set_channel");
    for (std::size_t i = 0; i < pixel_count(); ++i) data[i * kChannels + c] = p.data[i];
}

LabFrame::LabFrame(int w, int h) : width(w), height(h), L(w, h), a(w, h), b(w, h) {}

void require_same_dims(int w0, int h0, int w1, int h1, const std::string& what) {
    if (w0 != w1 || h0 != h1) {
        throw ValidationError(what + ": dimension mismatch (" + std::to_string(w0) + "x" +
                              std::to_string(h0) + " vs " + std::to_string(w1) + "x" +
                              std::to_string(h1) + ")");
    }
}

}  // namespace relight
