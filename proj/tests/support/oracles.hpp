#pragma once

// Brute-force reference implementations used to cross-check the library.
// Written directly from the defining formulas; nothing here calls into the
// code under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "relight/core/image.hpp"

namespace oracle {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

inline double gray(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

inline relight::Plane random_plane(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> d(lo, hi);
    relight::Plane p(w, h);
    for (float& v : p.data) v = d(rng);
    return p;
}

inline relight::GrayFrame random_gray(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
    return relight::GrayFrame(random_plane(w, h, seed, lo, hi));
}

inline relight::Frame random_frame(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> d(lo, hi);
    relight::Frame f(w, h);
    for (float& v : f.data) v = d(rng);
    return f;
}

// 2D Gaussian convolution with edge replication, normalized over the full
// (2r+1)^2 window.
inline std::vector<double> blur(const relight::Plane& p, double sigma, int radius) {
    std::vector<double> out(p.size());
    double norm = 0.0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) norm += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            double acc = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    const double w = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
                    acc += w * p.at(clampi(x + dx, 0, p.width - 1), clampi(y + dy, 0, p.height - 1));
                }
            }
            out[static_cast<std::size_t>(y) * p.width + x] = acc / norm;
        }
    }
    return out;
}

// |DFT| in natural (unshifted) order, index ky * w + kx.
inline std::vector<double> dft_magnitude(const relight::Plane& p) {
    const int w = p.width, h = p.height;
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            std::complex<double> acc = 0.0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double phase = -2.0 * std::numbers::pi * (double(kx) * x / w + double(ky) * y / h);
                    acc += double(p.at(x, y)) * std::polar(1.0, phase);
                }
            }
            out[static_cast<std::size_t>(ky) * w + kx] = std::abs(acc);
        }
    }
    return out;
}

// Bilateral filter: spatial Gaussian over a square window, range Gaussian
// on Rec.601 gray, same weights for every channel.
inline relight::Frame bilateral(const relight::Frame& f, double sigma_s, double sigma_r, int radius) {
    relight::Frame out(f.width, f.height);
    auto g = [&](int x, int y) { return gray(f.at(x, y, 0), f.at(x, y, 1), f.at(x, y, 2)); };
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            const double gc = g(x, y);
            double wsum = 0.0, acc[3] = {0, 0, 0};
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int xx = clampi(x + dx, 0, f.width - 1);
                    const int yy = clampi(y + dy, 0, f.height - 1);
                    const double d = g(xx, yy) - gc;
                    const double w = std::exp(-(dx * dx + dy * dy) / (2 * sigma_s * sigma_s)) *
                                     std::exp(-(d * d) / (2 * sigma_r * sigma_r));
                    for (int c = 0; c < 3; ++c) acc[c] += w * f.at(xx, yy, c);
                    wsum += w;
                }
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c] / wsum);
        }
    }
    return out;
}

struct SsimTerms {
    double mean_q = 0.0;
    double mean_luminance = 0.0;
    double mean_contrast = 0.0;
    double mean_structure = 0.0;
};

// Sliding Gaussian window at every pixel (edge replicated), centered
// two-pass moments.
inline SsimTerms ssim(const relight::Plane& a, const relight::Plane& b, int window = 11, double sigma = 1.5,
                      double c1 = 1e-4, double c2 = 9e-4, double c3 = 4.5e-4) {
    const int r = window / 2;
    std::vector<double> wts;
    double norm = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            wts.push_back(std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)));
            norm += wts.back();
        }
    for (double& w : wts) w /= norm;
    SsimTerms t;
    const double n = double(a.width) * a.height;
    for (int y = 0; y < a.height; ++y) {
        for (int x = 0; x < a.width; ++x) {
            double mx = 0, my = 0;
            std::size_t k = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx, ++k) {
                    const int xx = clampi(x + dx, 0, a.width - 1), yy = clampi(y + dy, 0, a.height - 1);
                    mx += wts[k] * a.at(xx, yy);
                    my += wts[k] * b.at(xx, yy);
                }
            double vx = 0, vy = 0, cov = 0;
            k = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx, ++k) {
                    const int xx = clampi(x + dx, 0, a.width - 1), yy = clampi(y + dy, 0, a.height - 1);
                    const double ex = a.at(xx, yy) - mx, ey = b.at(xx, yy) - my;
                    vx += wts[k] * ex * ex;
                    vy += wts[k] * ey * ey;
                    cov += wts[k] * ex * ey;
                }
            const double sx = std::sqrt(vx), sy = std::sqrt(vy);
            const double l = (2 * mx * my + c1) / (mx * mx + my * my + c1);
            const double c = (2 * sx * sy + c2) / (vx + vy + c2);
            const double s = (cov + c3) / (sx * sy + c3);
            t.mean_q += l * c * s / n;
            t.mean_luminance += l / n;
            t.mean_contrast += c / n;
            t.mean_structure += s / n;
        }
    }
    return t;
}

// f_0 = g_0, f_t = alpha f_{t-1} + (1 - alpha) g_t
inline std::vector<double> geometric_recursion(const std::vector<double>& g, double alpha) {
    std::vector<double> f(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) f[t] = t == 0 ? g[0] : alpha * f[t - 1] + (1 - alpha) * g[t];
    return f;
}

// Scalar guidance trace x <- D(x + lambda_t (target - x)) (convex) or
// x <- D(x + lambda_t (x - target)) (literal), fused value clamped to [0,1],
// lambda_t = 1 - t/T. Returns x after every step.
template <typename Denoise>
std::vector<double> guidance_trace(double x0, double target, int steps, bool convex, Denoise denoise) {
    std::vector<double> trace;
    double x = x0;
    for (int t = 0; t < steps; ++t) {
        const double lambda = 1.0 - double(t) / steps;
        x = convex ? x + lambda * (target - x) : x + lambda * (x - target);
        x = denoise(std::clamp(x, 0.0, 1.0));
        trace.push_back(x);
    }
    return trace;
}

inline std::vector<double> guidance_trace(double x0, double target, int steps, bool convex) {
    return guidance_trace(x0, target, steps, convex, [](double v) { return v; });
}

// Spearman for distinct values: 1 - 6 sum d^2 / (n (n^2 - 1)).
inline double spearman_distinct(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            int below = 0;
            for (double u : v) below += u < v[i];
            r[i] = below + 1;
        }
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    const double n = double(a.size());
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// Mean over bright pixels (gray*255 >= tau) of 0..255 gray.
inline double bright_mean(const relight::Frame& f, double tau) {
    double sum = 0;
    std::size_t n = 0;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const double v = 255.0 * gray(f.at(x, y, 0), f.at(x, y, 1), f.at(x, y, 2));
            if (v >= tau) {
                sum += v;
                ++n;
            }
        }
    return n ? sum / n : 0.0;
}

}  // namespace oracle
