#include "relight/app/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "relight/core/errors.hpp"

namespace relight {

ProceduralTexture::ProceduralTexture(std::uint64_t seed, int components, double min_period,
                                     double max_period) {
    require(components > 0, "texture: components must be positive");
    require(min_period > 0.0 && max_period >= min_period, "texture: bad period range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double power = 0.0;
    for (int i = 0; i < components; ++i) {
        const double theta = unit(rng) * std::numbers::pi;
        const double period = min_period + (max_period - min_period) * unit(rng);
        const double f = 2.0 * std::numbers::pi / period;
        Wave w{f * std::cos(theta), f * std::sin(theta), 2.0 * std::numbers::pi * unit(rng), {}};
        const double base = 0.5 + 0.5 * unit(rng);
        for (double& a : w.amp) a = base * (0.8 + 0.4 * unit(rng));
        power += base * base / 2.0;
        waves_.push_back(w);
    }
    norm_ = 0.12 / std::sqrt(power);
}

float ProceduralTexture::sample(double x, double y, int channel) const {
    double s = 0.0;
    for (const Wave& w : waves_) s += w.amp[channel] * std::cos(w.fx * x + w.fy * y + w.phase);
    return static_cast<float>(std::clamp(0.5 + norm_ * s, 0.0, 1.0));
}

Frame ProceduralTexture::render(int width, int height, double shift_x, double shift_y) const {
    Frame f(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < Frame::kChannels; ++c) f.at(x, y, c) = sample(x - shift_x, y - shift_y, c);
        }
    }
    return f;
}

namespace {

float to_unit(double v255) { return static_cast<float>(std::clamp(v255 / 255.0, 0.0, 1.0)); }

// Static scene: bright rectangle (around 180) on a dark surround (around 40)
// with mild texture. Brightness offsets applied later stay clear of the
// default threshold for amplitudes up to +-25.
Frame bright_dark_scene(int width, int height, std::uint64_t seed, std::vector<bool>& bright_mask) {
    const ProceduralTexture tex(seed);
    Frame f(width, height);
    bright_mask.assign(f.pixel_count(), false);
    const int x0 = width / 4, x1 = width - width / 4;
    const int y0 = height / 4, y1 = height - height / 4;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const bool bright = x >= x0 && x < x1 && y >= y0 && y < y1;
            bright_mask[static_cast<std::size_t>(y) * width + x] = bright;
            const double base = bright ? 180.0 : 40.0;
            for (int c = 0; c < Frame::kChannels; ++c) {
                // texture is centered on 0.5 with std 0.12; scale to std ~6 levels
                const double t = (tex.sample(x, y, c) - 0.5) * 50.0;
                f.at(x, y, c) = to_unit(base + t);
            }
        }
    }
    return f;
}

Frame offset_frame(const Frame& src, double offset255) {
    Frame out = src;
    const float d = static_cast<float>(offset255 / 255.0);
    for (float& v : out.data) v = std::clamp(v + d, 0.0f, 1.0f);
    return out;
}

SynthResult make_constant(const SynthParams& p) {
    SynthResult r;
    r.frames.assign(static_cast<std::size_t>(p.frames), Frame(p.width, p.height, to_unit(p.level)));
    return r;
}

SynthResult make_flicker(const SynthParams& p) {
    require(p.period >= 1, "synth: period must be >= 1");
    std::vector<bool> mask;
    const Frame scene = bright_dark_scene(p.width, p.height, p.seed, mask);
    SynthResult r;
    nlohmann::json offsets = nlohmann::json::array();
    for (int t = 0; t < p.frames; ++t) {
        const double offset = ((t / p.period) % 2 == 0 ? 0.5 : -0.5) * p.amplitude;
        r.frames.push_back(offset_frame(scene, offset));
        offsets.push_back(offset);
    }
    r.truth = {{"kind", "flicker"}, {"offsets", offsets}};
    return r;
}

SynthResult make_jitter(const SynthParams& p) {
    std::vector<bool> mask;
    const Frame scene = bright_dark_scene(p.width, p.height, p.seed, mask);
    std::mt19937_64 rng(p.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> swing(-0.5 * p.amplitude, 0.5 * p.amplitude);
    std::normal_distribution<double> noise(0.0, p.noise);
    SynthResult r;
    nlohmann::json offsets = nlohmann::json::array();
    for (int t = 0; t < p.frames; ++t) {
        const double offset = swing(rng);
        Frame f = offset_frame(scene, offset);
        if (p.noise > 0.0) {
            for (float& v : f.data) v = std::clamp(v + static_cast<float>(noise(rng) / 255.0), 0.0f, 1.0f);
        }
        r.frames.push_back(std::move(f));
        offsets.push_back(offset);
    }
    r.truth = {{"kind", "jitter"}, {"offsets", offsets}};
    return r;
}

SynthResult make_moving_square(const SynthParams& p) {
    require(p.size >= 1 && p.size < p.width && p.size < p.height, "synth: square size must fit the frame");
    const ProceduralTexture background(p.seed);
    const ProceduralTexture square(p.seed + 1);
    const double y0 = std::floor((p.height - p.size) / 2.0);
    const double x_start = 16.0;
    SynthResult r;
    nlohmann::json positions = nlohmann::json::array();
    for (int t = 0; t < p.frames; ++t) {
        const double x0 = x_start + p.speed * t;
        Frame f(p.width, p.height);
        for (int y = 0; y < p.height; ++y) {
            for (int x = 0; x < p.width; ++x) {
                const bool inside = x >= x0 && x < x0 + p.size && y >= y0 && y < y0 + p.size;
                for (int c = 0; c < Frame::kChannels; ++c) {
                    // background spans roughly 30..90, the square 170..240
                    f.at(x, y, c) = inside ? to_unit(170.0 + 70.0 * square.sample(x - x0, y - y0, c))
                                           : to_unit(30.0 + 60.0 * background.sample(x, y, c));
                }
            }
        }
        r.frames.push_back(std::move(f));
        positions.push_back({{"frame", t}, {"x", x0}, {"y", y0}, {"size", p.size}});
    }
    r.truth = {{"kind", "moving-square"}, {"speed", p.speed}, {"positions", positions}};
    return r;
}

SynthResult make_translation(const SynthParams& p) {
    const ProceduralTexture tex(p.seed);
    SynthResult r;
    for (int t = 0; t < p.frames; ++t) r.frames.push_back(tex.render(p.width, p.height, p.dx * t, p.dy * t));
    r.truth = {{"kind", "textured-translation"}, {"dx", p.dx}, {"dy", p.dy}};
    return r;
}

}  // namespace

const std::vector<std::string>& synth_kinds() {
    static const std::vector<std::string> kinds{"constant", "flicker", "moving-square", "textured-translation",
                                                "jitter"};
    return kinds;
}

SynthResult synthesize(const SynthParams& p) {
    require(p.width >= 1 && p.height >= 1, "synth: width and height must be positive");
    require(p.frames >= 1, "synth: frames must be positive");
    if (p.kind == "constant") return make_constant(p);
    if (p.kind == "flicker") return make_flicker(p);
    if (p.kind == "moving-square") return make_moving_square(p);
    if (p.kind == "textured-translation") return make_translation(p);
    if (p.kind == "jitter") return make_jitter(p);
    throw UsageError("unknown synth kind \"" + p.kind + "\"");
}

}  // namespace relight
