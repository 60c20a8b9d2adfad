#pragma once

#include <span>

#include "relight/core/image.hpp"

namespace relight {

/// 2D DFT magnitude, DC-centered: bin (width/2, height/2) holds DC.
struct Spectrum {
    int width = 0;
    int height = 0;
    Plane magnitude;
    Plane log_magnitude;  // ln(1 + magnitude)
};

Spectrum magnitude_spectrum(const GrayFrame& gray);

/// Elementwise mean over spectra of equal size (used for per-video spectra).
Spectrum mean_spectrum(std::span<const Spectrum> spectra);

/// Ratio of summed magnitude outside the centered low-frequency disc of
/// radius cutoff_fraction * Nyquist, spectrum a over spectrum b.
/// Throws ValidationError on size mismatch or zero high-band energy in b.
double high_freq_energy_ratio(const Spectrum& a, const Spectrum& b, double cutoff_fraction);

}  // namespace relight
