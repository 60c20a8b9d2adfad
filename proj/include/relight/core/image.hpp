#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace relight {

/// Single-channel float image, row-major. Used for intermediate planes
/// (blurred channels, motion magnitude, alpha maps, residuals).
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    Plane() = default;
    Plane(int w, int h, float fill = 0.0f);

    std::size_t size() const noexcept { return data.size(); }
    float& at(int x, int y) { return data[index(x, y)]; }
    float at(int x, int y) const { return data[index(x, y)]; }
    // Edge-replicated access.
    float clamped(int x, int y) const;

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }

    float min_value() const;
    float max_value() const;
    double mean() const;
};

/// Luminance frame with values in [0,1].
struct GrayFrame : Plane {
    using Plane::Plane;
    GrayFrame() = default;
    explicit GrayFrame(Plane p) : Plane(std::move(p)) {}
};

/// Interleaved RGB frame in working form: float samples in [0,1].
/// 8-bit quantization only happens at the file boundary.
struct Frame {
    static constexpr int kChannels = 3;

    int width = 0;
    int height = 0;
    std::vector<float> data;

    Frame() = default;
    Frame(int w, int h, float fill = 0.0f);

    static Frame from_8bit(int w, int h, std::span<const std::uint8_t> rgb);
    std::vector<std::uint8_t> to_8bit() const;

    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)) * kChannels + static_cast<std::size_t>(c);
    }
    float& at(int x, int y, int c) { return data[index(x, y, c)]; }
    float at(int x, int y, int c) const { return data[index(x, y, c)]; }

    void set_pixel(int x, int y, float r, float g, float b);
    Plane channel(int c) const;
    void set_channel(int c, const Plane& p);
};

/// Planar CIELAB frame. L in [0,100]; a, b unbounded.
struct LabFrame {
    int width = 0;
    int height = 0;
    Plane L;
    Plane a;
    Plane b;

    LabFrame() = default;
    LabFrame(int w, int h);
};

template <typename A, typename B>
bool same_dims(const A& a, const B& b) noexcept {
    return a.width == b.width && a.height == b.height;
}

// Throws ValidationError naming `what` when dimensions differ.
void require_same_dims(int w0, int h0, int w1, int h1, const std::string& what);

template <typename A, typename B>
void require_same_dims(const A& a, const B& b, const std::string& what) {
    require_same_dims(a.width, a.height, b.width, b.height, what);
}

}  // namespace relight
