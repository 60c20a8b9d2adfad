#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "relight/core/image.hpp"

namespace relight {

/// Parameters of the synthetic fixtures. Brightness values are on the
/// 0..255 scale.
struct SynthParams {
    std::string kind = "constant";  // constant, flicker, moving-square, textured-translation, jitter
    int width = 320;
    int height = 240;
    int frames = 48;
    std::uint64_t seed = 1;

    double level = 128.0;       // constant: gray level
    double amplitude = 50.0;    // flicker: peak-to-peak toggle; jitter: peak-to-peak global swing
    int period = 1;             // flicker: frames between toggles
    double speed = 8.0;         // moving-square: px per frame along x
    int size = 48;              // moving-square: side length
    double dx = 2.0;            // textured-translation: px per frame
    double dy = 3.0;
    double noise = 4.0;         // jitter: per-pixel noise std
};

struct SynthResult {
    std::vector<Frame> frames;
    nlohmann::json truth;  // generator-defined ground truth (null when none)
};

/// Throws UsageError for an unknown kind and ValidationError for bad sizes.
SynthResult synthesize(const SynthParams& params);

const std::vector<std::string>& synth_kinds();

/// Smooth band-limited RGB texture in [0,1], evaluated at continuous
/// coordinates so that shifted copies are exact.
class ProceduralTexture {
public:
    explicit ProceduralTexture(std::uint64_t seed, int components = 16, double min_period = 10.0,
                               double max_period = 48.0);
    float sample(double x, double y, int channel) const;
    Frame render(int width, int height, double shift_x = 0.0, double shift_y = 0.0) const;

private:
    struct Wave {
        double fx, fy, phase;
        double amp[3];
    };
    std::vector<Wave> waves_;
    double norm_ = 1.0;
};

}  // namespace relight
