#include "relight/flow/flow.hpp"

#include <array>
#include <cmath>

#include "relight/core/errors.hpp"
#include "relight/core/filter.hpp"
#include "relight/core/parallel.hpp"
#include "relight/core/resample.hpp"

namespace relight {

namespace {

// Intensities are expanded on a 0..255 scale; the solver damping below is
// sized for that range.
constexpr float kIntensityScale = 255.0f;
constexpr double kDamping = 1e-3;
constexpr int kMinLevelSize = 32;

// Quadratic model f(p + d) ~ c + b.d + d'Ad around every pixel, stored as
// the five coefficients that matter for displacement.
struct PolyExpansion {
    Plane bx, by;        // linear
    Plane axx, ayy, axy; // quadratic: A = [[axx, axy/2], [axy/2, ayy]]
};

using Matrix6 = std::array<std::array<double, 6>, 6>;

Matrix6 invert(Matrix6 m) {
    Matrix6 inv{};
    for (int i = 0; i < 6; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 6; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 6; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = m[col][col];
        for (int k = 0; k < 6; ++k) {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for (int r = 0; r < 6; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            if (f == 0.0) continue;
            for (int k = 0; k < 6; ++k) {
                m[r][k] -= f * m[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

// Weighted least-squares fit of {1, x, y, x^2, y^2, xy} over a Gaussian
// applicability window of radius n, computed with separable correlations.
PolyExpansion poly_expand(const Plane& img, int n, double sigma) {
    const int w = img.width;
    const int h = img.height;
    const int taps = 2 * n + 1;
    std::vector<double> g(static_cast<std::size_t>(taps));
    double gsum = 0.0;
    for (int k = -n; k <= n; ++k) {
        g[static_cast<std::size_t>(k + n)] = std::exp(-(k * k) / (2.0 * sigma * sigma));
        gsum += g[static_cast<std::size_t>(k + n)];
    }
    for (double& v : g) v /= gsum;

    Matrix6 gram{};
    for (int dy = -n; dy <= n; ++dy) {
        for (int dx = -n; dx <= n; ++dx) {
            const double wgt = g[static_cast<std::size_t>(dx + n)] * g[static_cast<std::size_t>(dy + n)];
            const std::array<double, 6> basis{1.0, double(dx), double(dy), double(dx * dx),
                                              double(dy * dy), double(dx * dy)};
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) gram[i][j] += wgt * basis[i] * basis[j];
            }
        }
    }
    const Matrix6 gram_inv = invert(gram);

    // Vertical pass: moments of order 0, 1, 2 in y.
    const std::size_t count = img.size();
    std::vector<double> v0(count), v1(count), v2(count);
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            double s0 = 0.0, s1 = 0.0, s2 = 0.0;
            for (int k = -n; k <= n; ++k) {
                const double f = img.clamped(x, y + k) * g[static_cast<std::size_t>(k + n)];
                s0 += f;
                s1 += f * k;
                s2 += f * k * k;
            }
            const std::size_t i = img.index(x, y);
            v0[i] = s0;
            v1[i] = s1;
            v2[i] = s2;
        }
    });

    PolyExpansion e{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    parallel_rows(h, [&](int y) {
        const std::size_t row = static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            std::array<double, 6> s{};
            for (int k = -n; k <= n; ++k) {
                const std::size_t j = row + static_cast<std::size_t>(std::clamp(x + k, 0, w - 1));
                const double gk = g[static_cast<std::size_t>(k + n)];
                s[0] += gk * v0[j];
                s[1] += gk * k * v0[j];
                s[2] += gk * v1[j];
                s[3] += gk * k * k * v0[j];
                s[4] += gk * v2[j];
                s[5] += gk * k * v1[j];
            }
            std::array<double, 6> r{};
            for (int a = 0; a < 6; ++a) {
                for (int b = 0; b < 6; ++b) r[a] += gram_inv[a][b] * s[b];
            }
            const std::size_t i = row + static_cast<std::size_t>(x);
            e.bx.data[i] = static_cast<float>(r[1]);
            e.by.data[i] = static_cast<float>(r[2]);
            e.axx.data[i] = static_cast<float>(r[3]);
            e.ayy.data[i] = static_cast<float>(r[4]);
            e.axy.data[i] = static_cast<float>(r[5]);
        }
    });
    return e;
}

// Normal equations G d = h of the windowed displacement least squares.
struct DisplacementSystem {
    Plane g11, g12, g22, h1, h2;
};

DisplacementSystem build_system(const PolyExpansion& e1, const PolyExpansion& e2,
                                const FlowField& flow) {
    const int w = flow.width;
    const int h = flow.height;
    DisplacementSystem s{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = flow.u.index(x, y);
            const double du = flow.u.data[i];
            const double dv = flow.v.data[i];
            const double sx = x + du;
            const double sy = y + dv;

            const double a11 = 0.5 * (e1.axx.data[i] + sample_bilinear(e2.axx, sx, sy));
            const double a22 = 0.5 * (e1.ayy.data[i] + sample_bilinear(e2.ayy, sx, sy));
            const double a12 = 0.25 * (e1.axy.data[i] + sample_bilinear(e2.axy, sx, sy));
            const double dbx = -0.5 * (sample_bilinear(e2.bx, sx, sy) - e1.bx.data[i]) + a11 * du + a12 * dv;
            const double dby = -0.5 * (sample_bilinear(e2.by, sx, sy) - e1.by.data[i]) + a12 * du + a22 * dv;

            s.g11.data[i] = static_cast<float>(a11 * a11 + a12 * a12);
            s.g12.data[i] = static_cast<float>(a12 * (a11 + a22));
            s.g22.data[i] = static_cast<float>(a12 * a12 + a22 * a22);
            s.h1.data[i] = static_cast<float>(a11 * dbx + a12 * dby);
            s.h2.data[i] = static_cast<float>(a12 * dbx + a22 * dby);
        }
    });
    return s;
}

void solve_system(const DisplacementSystem& raw, int window_radius, FlowField& flow) {
    const Plane g11 = box_filter(raw.g11, window_radius);
    const Plane g12 = box_filter(raw.g12, window_radius);
    const Plane g22 = box_filter(raw.g22, window_radius);
    const Plane h1 = box_filter(raw.h1, window_radius);
    const Plane h2 = box_filter(raw.h2, window_radius);
    for (std::size_t i = 0; i < flow.u.size(); ++i) {
        const double a = g11.data[i] + kDamping;
        const double c = g22.data[i] + kDamping;
        const double b = g12.data[i];
        const double det = a * c - b * b;
        flow.u.data[i] = static_cast<float>((c * h1.data[i] - b * h2.data[i]) / det);
        flow.v.data[i] = static_cast<float>((a * h2.data[i] - b * h1.data[i]) / det);
    }
}

Plane pyramid_level(const Plane& base, double scale, int w, int h) {
    if (w == base.width && h == base.height) return base;
    const double sigma = (1.0 / scale - 1.0) * 0.5;
    return resize_bilinear(gaussian_blur(base, sigma), w, h);
}

FlowField upsample_flow(const FlowField& flow, int w, int h) {
    FlowField out(w, h);
    out.u = resize_bilinear(flow.u, w, h);
    out.v = resize_bilinear(flow.v, w, h);
    const float sx = static_cast<float>(w) / static_cast<float>(flow.width);
    const float sy = static_cast<float>(h) / static_cast<float>(flow.height);
    for (float& u : out.u.data) u *= sx;
    for (float& v : out.v.data) v *= sy;
    return out;
}

}  // namespace

void FlowParams::validate() const {
    require(pyramid_levels >= 1, "flow.pyramid_levels must be >= 1");
    require(pyramid_scale > 0.0 && pyramid_scale < 1.0, "flow.pyramid_scale must be in (0,1)");
    require(window_size >= 3 && window_size % 2 == 1, "flow.window_size must be an odd integer >= 3");
    require(iterations >= 1, "flow.iterations must be >= 1");
    require(poly_n >= 5 && poly_n % 2 == 1, "flow.poly_n must be an odd integer >= 5");
    require(poly_sigma > 0.0, "flow.poly_sigma must be > 0");
}

FlowField estimate_flow(const GrayFrame& prev, const GrayFrame& curr, const FlowParams& params) {
    params.validate();
    require_same_dims(prev, curr, "estimate_flow");
    require(prev.width >= params.window_size && prev.height >= params.window_size,
            "estimate_flow: frame smaller than the analysis window");

    Plane p0 = prev;
    Plane c0 = curr;
    for (float& v : p0.data) v *= kIntensityScale;
    for (float& v : c0.data) v *= kIntensityScale;

    int coarsest = 0;
    double scale = 1.0;
    for (int k = 1; k < params.pyramid_levels; ++k) {
        scale *= params.pyramid_scale;
        if (prev.width * scale < kMinLevelSize || prev.height * scale < kMinLevelSize) break;
        coarsest = k;
    }

    const int window_radius = params.window_size / 2;
    FlowField flow;
    for (int k = coarsest; k >= 0; --k) {
        const double s = std::pow(params.pyramid_scale, k);
        const int w = k == 0 ? prev.width : std::max(1, static_cast<int>(std::lround(prev.width * s)));
        const int h = k == 0 ? prev.height : std::max(1, static_cast<int>(std::lround(prev.height * s)));

        flow = flow.width == 0 ? FlowField(w, h) : upsample_flow(flow, w, h);

        const PolyExpansion e1 = poly_expand(pyramid_level(p0, s, w, h), params.poly_n, params.poly_sigma);
        const PolyExpansion e2 = poly_expand(pyramid_level(c0, s, w, h), params.poly_n, params.poly_sigma);
        for (int it = 0; it < params.iterations; ++it) {
            solve_system(build_system(e1, e2, flow), window_radius, flow);
        }
    }
    return flow;
}

Plane warp_plane(const Plane& plane, const FlowField& flow) {
    require_same_dims(plane, flow, "warp_plane");
    Plane out(plane.width, plane.height);
    parallel_rows(plane.height, [&](int y) {
        for (int x = 0; x < plane.width; ++x) {
            const std::size_t i = plane.index(x, y);
            out.data[i] = sample_bilinear(plane, x - static_cast<double>(flow.u.data[i]),
                                          y - static_cast<double>(flow.v.data[i]));
        }
    });
    return out;
}

Frame warp_frame(const Frame& frame, const FlowField& flow) {
    require_same_dims(frame, flow, "warp_frame");
    Frame out(frame.width, frame.height);
    for (int c = 0; c < Frame::kChannels; ++c) out.set_channel(c, warp_plane(frame.channel(c), flow));
    return out;
}

Plane flow_magnitude(const FlowField& flow) {
    Plane m(flow.width, flow.height);
    for (std::size_t i = 0; i < m.size(); ++i) {
        m.data[i] = static_cast<float>(std::hypot(double(flow.u.data[i]), double(flow.v.data[i])));
    }
    return m;
}

}  // namespace relight
