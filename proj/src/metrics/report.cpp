#include "relight/metrics/report.hpp"

#include "relight/core/color.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/spectrum.hpp"

namespace relight {

std::vector<GrayFrame> to_grayscale(std::span<const Frame> frames) {
    std::vector<GrayFrame> out;
    out.reserve(frames.size());
    for (const Frame& f : frames) out.push_back(to_grayscale(f));
    return out;
}

EvalReport evaluate(std::span<const Frame> candidate, std::span<const Frame> reference,
                    const StabilityParams& stability, const SsimParams& ssim_params) {
    EvalReport report;
    report.params = stability;
    const auto cand_gray = to_grayscale(candidate);
    report.candidate = light_stability_score(cand_gray, stability);
    if (reference.empty()) return report;

    require(candidate.size() == reference.size(), "evaluate: frame count mismatch");
    const auto ref_gray = to_grayscale(reference);
    report.reference = light_stability_score(ref_gray, stability);

    double total = 0.0;
    std::vector<Spectrum> cand_spec, ref_spec;
    for (std::size_t i = 0; i < cand_gray.size(); ++i) {
        total += ssim(cand_gray[i], ref_gray[i], ssim_params);
        cand_spec.push_back(magnitude_spectrum(cand_gray[i]));
        ref_spec.push_back(magnitude_spectrum(ref_gray[i]));
    }
    report.ssim = total / static_cast<double>(cand_gray.size());
    try {
        report.high_freq_ratio = high_freq_energy_ratio(mean_spectrum(cand_spec), mean_spectrum(ref_spec), 0.25);
    } catch (const ValidationError&) {
        // Reference without high-frequency content: ratio undefined.
    }
    return report;
}

}  // namespace relight
