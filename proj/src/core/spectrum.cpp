#include "relight/core/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

#include "relight/core/errors.hpp"

namespace relight {

namespace {

// FFTW planning is not thread-safe.
std::mutex g_plan_mutex;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

Spectrum magnitude_spectrum(const GrayFrame& gray) {
    require(gray.width >= 1 && gray.height >= 1, "magnitude_spectrum: empty frame");
    const int w = gray.width;
    const int h = gray.height;
    const std::size_t n = gray.size();

    std::unique_ptr<fftw_complex, FftwFree> buf(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
    for (std::size_t i = 0; i < n; ++i) {
        buf.get()[i][0] = gray.data[i];
        buf.get()[i][1] = 0.0;
    }
    fftw_plan plan;
    {
        std::lock_guard lock(g_plan_mutex);
        plan = fftw_plan_dft_2d(h, w, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }

    Spectrum s;
    s.width = w;
    s.height = h;
    s.magnitude = Plane(w, h);
    s.log_magnitude = Plane(w, h);
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            const fftw_complex& c = buf.get()[static_cast<std::size_t>(ky) * w + kx];
            const double mag = std::hypot(c[0], c[1]);
            const int sx = (kx + w / 2) % w;
            const int sy = (ky + h / 2) % h;
            s.magnitude.at(sx, sy) = static_cast<float>(mag);
            s.log_magnitude.at(sx, sy) = static_cast<float>(std::log1p(mag));
        }
    }
    return s;
}

Spectrum mean_spectrum(std::span<const Spectrum> spectra) {
    require(!spectra.empty(), "mean_spectrum: no spectra");
    Spectrum out;
    out.width = spectra.front().width;
    out.height = spectra.front().height;
    std::vector<double> acc(spectra.front().magnitude.size(), 0.0);
    for (const Spectrum& s : spectra) {
        require_same_dims(out, s, "mean_spectrum");
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s.magnitude.data[i];
    }
    out.magnitude = Plane(out.width, out.height);
    out.log_magnitude = Plane(out.width, out.height);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const double m = acc[i] / static_cast<double>(spectra.size());
        out.magnitude.data[i] = static_cast<float>(m);
        out.log_magnitude.data[i] = static_cast<float>(std::log1p(m));
    }
    return out;
}

double high_freq_energy_ratio(const Spectrum& a, const Spectrum& b, double cutoff_fraction) {
    require_same_dims(a, b, "high_freq_energy_ratio");
    require(cutoff_fraction > 0.0 && cutoff_fraction < 1.0,
            "high_freq_energy_ratio: cutoff_fraction must be in (0,1)");
    // Normalized frequency of a shifted bin is (k - N/2) / N cycles per pixel;
    // Nyquist is 0.5.
    const double radius = cutoff_fraction * 0.5;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (int y = 0; y < a.height; ++y) {
        const double fy = static_cast<double>(y - a.height / 2) / a.height;
        for (int x = 0; x < a.width; ++x) {
            const double fx = static_cast<double>(x - a.width / 2) / a.width;
            if (std::hypot(fx, fy) <= radius) continue;
            sum_a += a.magnitude.at(x, y);
            sum_b += b.magnitude.at(x, y);
        }
    }
    if (sum_b == 0.0) throw ValidationError("high_freq_energy_ratio: reference has no high-frequency energy");
    return sum_a / sum_b;
}

}  // namespace relight
