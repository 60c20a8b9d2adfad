#include "relight/metrics/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relight/core/errors.hpp"

namespace relight {

namespace {

// Absorbs float rounding of values that sit exactly on an 8-bit level
// (k/255 stored as float and scaled back).
constexpr double kLevelTolerance = 1e-3;

}  // namespace

void StabilityParams::validate() const {
    require(tau >= 0.0 && tau <= 255.0, "tau must be in [0,255]");
    require(k_I > 0.0, "k_I must be > 0");
    require(k_C > 0.0, "k_C must be > 0");
    require(k_dI > 0.0, "k_dI must be > 0");
}

BrightSignals bright_signals(std::span<const GrayFrame> frames, double tau) {
    BrightSignals out;
    out.intensity.label = "I_t";
    out.count.label = "C_t";
    out.intensity.values.reserve(frames.size());
    out.count.values.reserve(frames.size());
    for (const GrayFrame& f : frames) {
        double sum = 0.0;
        std::size_t count = 0;
        for (float g : f.data) {
            const double v = to_8bit_scale(g);
            if (v >= tau - kLevelTolerance) {
                sum += v;
                ++count;
            }
        }
        out.count.values.push_back(static_cast<double>(count));
        out.intensity.values.push_back(count > 0 ? sum / static_cast<double>(count) : 0.0);
    }
    return out;
}

TimeSeries derivative_series(const TimeSeries& s) {
    require(s.values.size() >= 2, "derivative_series: need at least 2 samples");
    TimeSeries d;
    d.label = "d" + s.label;
    d.values.resize(s.values.size() - 1);
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) d.values[i] = s.values[i + 1] - s.values[i];
    return d;
}

SmoothnessScore smoothness_score(const TimeSeries& s, double k) {
    const auto& v = s.values;
    require(v.size() >= 2, "smoothness_score: need at least 2 samples");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) total += std::abs(v[i + 1] - v[i]);
    const double mean_change = total / static_cast<double>(v.size() - 1);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    if (range == 0.0) return {1.0, 0.0};
    const double u_norm = mean_change / range;
    return {std::exp(-k * u_norm), u_norm};
}

StabilityReport light_stability_score(std::span<const GrayFrame> frames, const StabilityParams& params) {
    params.validate();
    require(frames.size() >= 3, "light stability score needs at least 3 frames");
    BrightSignals sig = bright_signals(frames, params.tau);

    StabilityReport r;
    r.derivative = derivative_series(sig.intensity);
    r.derivative.label = "dI_t";
    const SmoothnessScore si = smoothness_score(sig.intensity, params.k_I);
    const SmoothnessScore sc = smoothness_score(sig.count, params.k_C);
    const SmoothnessScore sd = smoothness_score(r.derivative, params.k_dI);
    r.s_I = si.score;
    r.s_C = sc.score;
    r.s_dI = sd.score;
    r.u_norm_I = si.u_norm;
    r.u_norm_C = sc.u_norm;
    r.u_norm_dI = sd.u_norm;
    r.s_LS = (r.s_I + r.s_C + r.s_dI) / 3.0;
    r.intensity = std::move(sig.intensity);
    r.count = std::move(sig.count);
    return r;
}

std::vector<TauScore> tau_sensitivity(std::span<const GrayFrame> frames, std::span<const double> taus,
                                      const StabilityParams& params) {
    require(!taus.empty(), "tau_sensitivity: no thresholds");
    std::vector<TauScore> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        StabilityParams p = params;
        p.tau = tau;
        out.push_back({tau, light_stability_score(frames, p).s_LS});
    }
    return out;
}

std::vector<int> rank_descending(std::span<const double> scores) {
    std::vector<int> ranks(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        int better = 0;
        for (double other : scores) better += other > scores[i] ? 1 : 0;
        ranks[i] = better + 1;
    }
    return ranks;
}

std::vector<std::uint64_t> brightness_histogram(std::span<const GrayFrame> frames, int bins) {
    require(bins >= 1 && bins <= 256 && 256 % bins == 0, "histogram bins must divide 256");
    const int width = 256 / bins;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    for (const GrayFrame& f : frames) {
        for (float g : f.data) {
            const int level = std::clamp(static_cast<int>(std::floor(to_8bit_scale(g) + kLevelTolerance)), 0, 255);
            ++counts[static_cast<std::size_t>(level / width)];
        }
    }
    return counts;
}

}  // namespace relight
