/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file demgeneral.hpp
 * @brief Approximate cut-and-project exchange maps on smooth windows (disk, ellipse) and on the square.
 *
 * Everything here is long double arithmetic. Membership tests that fall within 1e-9 of the window boundary are
 * flagged rather than trusted; results are approximate.
 */

#ifndef REXMAP_DEMGENERAL_HPP
#define REXMAP_DEMGENERAL_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "rexmap/cutproject.hpp"
#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"

namespace rexmap {

inline constexpr long double kBorderMargin = 1e-9L;

/// Bounded window with a signed boundary distance (positive inside).
struct SmoothWindow {
    enum class Shape { Disk, Square, Ellipse };

    Shape shape = Shape::Disk;
    long double cx = 0, cy = 0;  // centre; for the square, the lower-left corner
    long double rx = 1, ry = 1;  // radii; for the square, the side in rx

    static SmoothWindow disk(long double cx, long double cy, long double r) { return {Shape::Disk, cx, cy, r, r}; }
    static SmoothWindow square(long double x0, long double y0, long double side) {
        return {Shape::Square, x0, y0, side, side};
    }
    static SmoothWindow ellipse(long double cx, long double cy, long double rx, long double ry) {
        return {Shape::Ellipse, cx, cy, rx, ry};
    }

    /// Square membership is half-open, [x0, x0+s) x [y0, y0+s).
    bool contains(long double x, long double y) const {
        switch (shape) {
            case Shape::Square:
                return x >= cx && x < cx + rx && y >= cy && y < cy + rx;
            case Shape::Disk:
            case Shape::Ellipse: {
                long double u = (x - cx) / rx, v = (y - cy) / ry;
                return u * u + v * v <= 1;
            }
        }
        return false;
    }

    /// Exact Euclidean distance for the disk and square; a first-order estimate for the ellipse.
    long double boundary_distance(long double x, long double y) const {
        switch (shape) {
            case Shape::Square: {
                long double d = std::min({x - cx, cx + rx - x, y - cy, cy + rx - y});
                if (d >= 0) return d;
                long double ox = std::max({cx - x, 0.0L, x - cx - rx}), oy = std::max({cy - y, 0.0L, y - cy - rx});
                return -std::hypot(ox, oy);
            }
            case Shape::Disk:
                return rx - std::hypot(x - cx, y - cy);
            case Shape::Ellipse: {
                long double u = (x - cx) / rx, v = (y - cy) / ry;
                return (1 - std::sqrt(u * u + v * v)) * std::min(rx, ry);
            }
        }
        return 0;
    }

    void bounding_box(long double& x0, long double& x1, long double& y0, long double& y1) const {
        if (shape == Shape::Square) {
            x0 = cx, x1 = cx + rx, y0 = cy, y1 = cy + rx;
        } else {
            x0 = cx - rx, x1 = cx + rx, y0 = cy - ry, y1 = cy + ry;
        }
    }

    std::string describe() const {
        switch (shape) {
            case Shape::Square: return "square";
            case Shape::Disk: return "disk";
            case Shape::Ellipse: return "ellipse";
        }
        return "window";
    }
};

struct GeneralDEM {
    SmoothWindow window;
    long n = 6;
    std::array<long double, 3> lambda{};
    StepSet steps;                                        // ascending in z
    std::vector<std::pair<long double, long double>> vectors;  // xy-projection of each step
    std::size_t points = 0;
    std::size_t borderline_points = 0;
    std::string banner = "approximate: floating-point construction";

    std::pair<long double, long double> project(const LatticePoint& p) const {
        long double u[2];
        for (int i = 0; i < 2; ++i)
            u[i] = static_cast<long double>(p.a) + static_cast<long double>(p.b) * lambda[i] +
                   static_cast<long double>(p.c) * lambda[i] * lambda[i];
        return {u[0], u[1]};
    }

    long double z(const LatticePoint& p) const {
        return static_cast<long double>(p.a) + static_cast<long double>(p.b) * lambda[2] +
               static_cast<long double>(p.c) * lambda[2] * lambda[2];
    }
};

/// Lattice points of Z[lambda_n] with xy-projection in the window and 0 <= z <= zmax, by increasing z.
inline std::vector<LatticePoint> enumerate_general(const SmoothWindow& w, const std::array<long double, 3>& lam,
                                                   long double zmax, std::size_t* borderline = nullptr) {
    using LD = long double;
    LD lo[3], hi[3];
    w.bounding_box(lo[0], hi[0], lo[1], hi[1]);
    lo[2] = 0;
    hi[2] = zmax;
    LD m[3][3];
    for (int i = 0; i < 3; ++i) m[i][0] = 1, m[i][1] = lam[static_cast<std::size_t>(i)],
                               m[i][2] = lam[static_cast<std::size_t>(i)] * lam[static_cast<std::size_t>(i)];
    auto cof = [&](int r, int c) {
        int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    LD det = m[0][0] * cof(0, 0) + m[0][1] * cof(0, 1) + m[0][2] * cof(0, 2);
    LD clo = 0, chi = 0;
    for (int j = 0; j < 3; ++j) {
        LD coef = cof(j, 2) / det;
        clo += coef * (coef >= 0 ? lo[j] : hi[j]);
        chi += coef * (coef >= 0 ? hi[j] : lo[j]);
    }
    std::vector<std::pair<LD, LatticePoint>> found;
    LD dx = m[1][1] - m[0][1], dxp = m[1][2] - m[0][2];
    for (long long c = static_cast<long long>(std::floor(clo)) - 2; c <= static_cast<long long>(std::ceil(chi)) + 2; ++c) {
        LD b1 = (lo[1] - hi[0] - c * dxp) / dx, b2 = (hi[1] - lo[0] - c * dxp) / dx;
        if (b1 > b2) std::swap(b1, b2);
        for (long long b = static_cast<long long>(std::floor(b1)) - 1; b <= static_cast<long long>(std::ceil(b2)) + 1; ++b) {
            LD base = b * m[0][1] + c * m[0][2];
            for (long long a = static_cast<long long>(std::floor(lo[0] - base)) - 1;
                 a <= static_cast<long long>(std::ceil(hi[0] - base)) + 1; ++a) {
                LD u1 = a + base, u2 = a + b * m[1][1] + c * m[1][2], u3 = a + b * m[2][1] + c * m[2][2];
                if (u3 < 0 || u3 > zmax) continue;
                if (!w.contains(u1, u2)) continue;
                if (borderline && std::fabs(w.boundary_distance(u1, u2)) < kBorderMargin) ++*borderline;
                found.push_back({u3, LatticePoint{a, b, c}});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<LatticePoint> out;
    for (auto& f : found) out.push_back(f.second);
    return out;
}

/// Floating construction on a general window: enumerate, take successive differences, keep them ordered by z.
inline GeneralDEM build_general_dem(const SmoothWindow& w, long n, long double zmax) {
    GeneralDEM dem;
    dem.window = w;
    dem.n = n;
    auto field = make_field(poly_for_generator(n));
    for (int i = 0; i < 3; ++i) dem.lambda[static_cast<std::size_t>(i)] = FieldElement::generator(field).approx(i + 1);
    auto pts = enumerate_general(w, dem.lambda, zmax, &dem.borderline_points);
    dem.points = pts.size();
    if (pts.size() < 2) throw InsufficientPoints("window enumeration produced " + std::to_string(pts.size()) + " point(s)");
    std::set<LatticePoint> diffs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) diffs.insert(pts[i + 1] - pts[i]);
    dem.steps.assign(diffs.begin(), diffs.end());
    std::sort(dem.steps.begin(), dem.steps.end(),
              [&](const LatticePoint& p, const LatticePoint& q) { return dem.z(p) < dem.z(q); });
    for (const auto& s : dem.steps) dem.vectors.push_back(dem.project(s));
    return dem;
}

struct Classification {
    int index = -1;  // -1 when no step keeps the point in the window
    bool unreliable = false;
};

/// Least i with p + v_i in the window; unreliable when any tested image is within the margin of the boundary.
inline Classification classify(const GeneralDEM& dem, long double x, long double y) {
    Classification c;
    for (std::size_t i = 0; i < dem.vectors.size(); ++i) {
        long double px = x + dem.vectors[i].first, py = y + dem.vectors[i].second;
        if (std::fabs(dem.window.boundary_distance(px, py)) < kBorderMargin) c.unreliable = true;
        if (dem.window.contains(px, py)) {
            c.index = static_cast<int>(i);
            return c;
        }
    }
    return c;
}

struct GeneralOrbitPoint {
    long double x, y;
    int tile;  // step index used to leave this point, -1 for the last point
    bool unreliable;
};

/// Forward orbit under the least-index rule; stops early if no step applies.
inline std::vector<GeneralOrbitPoint> orbit_general(const GeneralDEM& dem, long double x, long double y,
                                                    std::size_t steps) {
    if (!dem.window.contains(x, y)) throw OutOfWindow("orbit start outside the window");
    std::vector<GeneralOrbitPoint> out;
    out.reserve(steps + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        Classification c = classify(dem, x, y);
        out.push_back({x, y, c.index, c.unreliable});
        if (c.index < 0) return out;
        x += dem.vectors[static_cast<std::size_t>(c.index)].first;
        y += dem.vectors[static_cast<std::size_t>(c.index)].second;
    }
    out.push_back({x, y, -1, std::fabs(dem.window.boundary_distance(x, y)) < kBorderMargin});
    return out;
}

/// Fraction of grid cells meeting the window (cell centre inside) that the orbit visits.
inline double general_coverage(const GeneralDEM& dem, const std::vector<GeneralOrbitPoint>& orbit, double eps) {
    long double x0, x1, y0, y1;
    dem.window.bounding_box(x0, x1, y0, y1);
    auto nx = static_cast<std::size_t>(std::ceil((x1 - x0) / eps)), ny = static_cast<std::size_t>(std::ceil((y1 - y0) / eps));
    std::vector<char> relevant(nx * ny, 0), seen(nx * ny, 0);
    std::size_t total = 0, hit = 0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (dem.window.contains(x0 + (i + 0.5L) * eps, y0 + (j + 0.5L) * eps)) {
                relevant[i * ny + j] = 1;
                ++total;
            }
    for (const auto& p : orbit) {
        auto i = static_cast<long long>(std::floor((p.x - x0) / eps)), j = static_cast<long long>(std::floor((p.y - y0) / eps));
        if (i < 0 || j < 0 || i >= static_cast<long long>(nx) || j >= static_cast<long long>(ny)) continue;
        std::size_t idx = static_cast<std::size_t>(i) * ny + static_cast<std::size_t>(j);
        if (relevant[idx] && !seen[idx]) {
            seen[idx] = 1;
            ++hit;
        }
    }
    return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

}  // namespace rexmap

#endif
