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
 * @file cutproject.hpp
 * @brief The Galois lattice, window enumeration, the lattice walk and step-set discovery.
 *
 * A lattice point (a, b, c) is paired with a coordinate vector xi = (1, x, x') over the field and becomes the single
 * field element a + b x + c x'. Its xy-projection reads that element at roots 1 and 2, its z-projection at root 3.
 * For a generator word xi = (1, t, t^2) and this is the usual a + b lambda_i + c lambda_i^2.
 *
 * Window membership uses the half-open square [0,1)^2.
 */

#ifndef REXMAP_CUTPROJECT_HPP
#define REXMAP_CUTPROJECT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"
#include "rexmap/pisot.hpp"
#include "rexmap/rectgeo.hpp"

namespace rexmap {

struct LatticePoint {
    long long a = 0, b = 0, c = 0;

    friend LatticePoint operator+(const LatticePoint& p, const LatticePoint& q) { return {p.a + q.a, p.b + q.b, p.c + q.c}; }
    friend LatticePoint operator-(const LatticePoint& p, const LatticePoint& q) { return {p.a - q.a, p.b - q.b, p.c - q.c}; }
    friend bool operator==(const LatticePoint& p, const LatticePoint& q) = default;
    friend auto operator<=>(const LatticePoint& p, const LatticePoint& q) = default;

    std::string to_string() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
};

using StepSet = std::vector<LatticePoint>;
using Basis = std::array<FieldElement, 3>;

/// a + b xi[1] + c xi[2] (xi[0] is 1).
inline FieldElement lattice_value(const Basis& xi, const LatticePoint& p) {
    return xi[0] * Rational(Integer(static_cast<long>(p.a))) + xi[1] * Rational(Integer(static_cast<long>(p.b))) +
           xi[2] * Rational(Integer(static_cast<long>(p.c)));
}

inline FieldElement lattice_value(const EigenData& e, const LatticePoint& p) { return lattice_value(e.xi, p); }

inline ExactPoint2 project_xy(const Basis& xi, const LatticePoint& p) {
    FieldElement v = lattice_value(xi, p);
    return {v, v};
}
inline ExactPoint2 project_xy(const EigenData& e, const LatticePoint& p) { return project_xy(e.xi, p); }

/// The element whose value at root 3 is the z-coordinate.
inline FieldElement project_z(const Basis& xi, const LatticePoint& p) { return lattice_value(xi, p); }
inline FieldElement project_z(const EigenData& e, const LatticePoint& p) { return lattice_value(e.xi, p); }

/// Long double z-coordinate (not certified).
inline long double approx_z(const Basis& xi, const LatticePoint& p) {
    return static_cast<long double>(p.a) * xi[0].approx(3) + static_cast<long double>(p.b) * xi[1].approx(3) +
           static_cast<long double>(p.c) * xi[2].approx(3);
}

inline bool in_half_open(const FieldElement& v, const FieldElement& lo, const FieldElement& hi, int root) {
    return compare_at(lo, v, root) <= 0 && compare_at(v, hi, root) < 0;
}

/// 0 <= v < 1 at roots 1 and 2.
inline bool in_window(const FieldElement& v) {
    Rational one(1);
    return sign_at(v, 1) >= 0 && sign_at(v - one, 1) < 0 && sign_at(v, 2) >= 0 && sign_at(v - one, 2) < 0;
}

inline bool in_window(const Basis& xi, const LatticePoint& p) { return in_window(lattice_value(xi, p)); }

/// Search box: x in [x0,x1), y in [y0,y1), z in [z0,z1].
struct LatticeBox {
    FieldElement x0, x1, y0, y1, z0, z1;
};

/// Strictly z-ascending order with exact tie detection; equal z-values are a hard error.
inline void sort_by_z(const Basis& xi, std::vector<LatticePoint>& pts) {
    std::vector<std::pair<long double, LatticePoint>> keyed;
    keyed.reserve(pts.size());
    for (const auto& p : pts) keyed.emplace_back(approx_z(xi, p), p);
    auto less = [&](const std::pair<long double, LatticePoint>& u, const std::pair<long double, LatticePoint>& v) {
        long double scale = 1 + std::fabs(u.first) + std::fabs(v.first);
        if (std::fabs(u.first - v.first) > 1e-12L * scale) return u.first < v.first;
        if (u.second == v.second) return false;
        int s = compare_at(project_z(xi, u.second), project_z(xi, v.second), 3);
        if (s == 0) throw Error("distinct lattice points with equal z: " + u.second.to_string() + " " + v.second.to_string());
        return s < 0;
    };
    std::sort(keyed.begin(), keyed.end(), less);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = keyed[i].second;
}

/**
 * All lattice points in a box, sorted by z.
 *
 * Candidate ranges come from the inverse of the embedding matrix in long double with an integer margin, then every
 * candidate is filtered exactly. The loop runs over c, then over the b admitted by the y - x constraint, then over the
 * a admitted by the x constraint.
 */
inline std::vector<LatticePoint> enumerate_box(const Basis& xi, const LatticeBox& box) {
    using LD = long double;
    LD X[3], Xp[3];
    for (int i = 0; i < 3; ++i) {
        X[i] = xi[1].approx(i + 1);
        Xp[i] = xi[2].approx(i + 1);
    }
    LD lo[3] = {box.x0.approx(1), box.y0.approx(2), box.z0.approx(3)};
    LD hi[3] = {box.x1.approx(1), box.y1.approx(2), box.z1.approx(3)};

    // Row 3 of the inverse of [[1, X_i, X'_i]]_i via cofactors.
    LD m[3][3];
    for (int i = 0; i < 3; ++i) {
        m[i][0] = 1;
        m[i][1] = X[i];
        m[i][2] = Xp[i];
    }
    auto cof = [&](int r, int c) {
        int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    LD det = m[0][0] * cof(0, 0) + m[0][1] * cof(0, 1) + m[0][2] * cof(0, 2);
    LD clo = 0, chi = 0;
    for (int j = 0; j < 3; ++j) {
        LD coef = cof(j, 2) / det;  // inverse(2, j) = cofactor(j, 2) / det
        clo += coef * (coef >= 0 ? lo[j] : hi[j]);
        chi += coef * (coef >= 0 ? hi[j] : lo[j]);
    }

    std::vector<LatticePoint> out;
    LD dx = X[1] - X[0], dxp = Xp[1] - Xp[0];
    LD diff_lo = lo[1] - hi[0], diff_hi = hi[1] - lo[0];
    for (long long c = static_cast<long long>(std::floor(clo)) - 2; c <= static_cast<long long>(std::ceil(chi)) + 2; ++c) {
        LD b1 = (diff_lo - static_cast<LD>(c) * dxp) / dx, b2 = (diff_hi - static_cast<LD>(c) * dxp) / dx;
        if (b1 > b2) std::swap(b1, b2);
        for (long long b = static_cast<long long>(std::floor(b1)) - 1; b <= static_cast<long long>(std::ceil(b2)) + 1; ++b) {
            LD base = static_cast<LD>(b) * X[0] + static_cast<LD>(c) * Xp[0];
            for (long long a = static_cast<long long>(std::floor(lo[0] - base)) - 1;
                 a <= static_cast<long long>(std::ceil(hi[0] - base)) + 1; ++a) {
                bool plausible = true;
                for (int i = 0; i < 3 && plausible; ++i) {
                    LD u = static_cast<LD>(a) + static_cast<LD>(b) * X[i] + static_cast<LD>(c) * Xp[i];
                    LD tol = 1e-6L * (1 + std::fabs(u));
                    plausible = u >= lo[i] - tol && u <= hi[i] + tol;
                }
                if (!plausible) continue;
                LatticePoint p{a, b, c};
                FieldElement v = lattice_value(xi, p);
                if (in_half_open(v, box.x0, box.x1, 1) && in_half_open(v, box.y0, box.y1, 2) &&
                    compare_at(box.z0, v, 3) <= 0 && compare_at(v, box.z1, 3) <= 0)
                    out.push_back(p);
            }
        }
    }
    sort_by_z(xi, out);
    return out;
}

/// Points with xy-projection in [0,1)^2 and 0 <= z <= zmax, ascending in z.
inline std::vector<LatticePoint> enumerate_window(const Basis& xi, const Rational& zmax) {
    if (zmax < 0) throw DomainError("zmax must be nonnegative");
    const FieldPtr& f = xi[0].field();
    LatticeBox box{FieldElement(f, 0), FieldElement(f, 1), FieldElement(f, 0),
                   FieldElement(f, 1), FieldElement(f, 0), FieldElement(f, zmax)};
    return enumerate_box(xi, box);
}

inline std::vector<LatticePoint> enumerate_window(const EigenData& e, const Rational& zmax) {
    return enumerate_window(e.xi, zmax);
}

/// Deduplicated successive differences of the z-ordered window points, ascending in z.
inline StepSet discover_step_set(const Basis& xi, const Rational& zmax) {
    auto pts = enumerate_window(xi, zmax);
    if (pts.size() < 2)
        throw InsufficientPoints("window enumeration produced " + std::to_string(pts.size()) + " point(s)");
    std::set<LatticePoint> seen;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) seen.insert(pts[i + 1] - pts[i]);
    StepSet steps(seen.begin(), seen.end());
    sort_by_z(xi, steps);
    return steps;
}

inline StepSet discover_step_set(const EigenData& e, const Rational& zmax) { return discover_step_set(e.xi, zmax); }

/// Least-index rule: p + eta_i for the first eta_i whose projection stays in the window.
inline LatticePoint walk_next(const LatticePoint& p, const StepSet& steps, const Basis& xi) {
    if (!in_window(xi, p)) throw PreconditionViolation("walk_next: " + p.to_string() + " is outside the window");
    for (const auto& s : steps) {
        LatticePoint q = p + s;
        if (in_window(xi, q)) return q;
    }
    throw NoValidStep("walk_next: no step keeps " + p.to_string() + " in the window");
}

inline LatticePoint walk_next(const LatticePoint& p, const StepSet& steps, const EigenData& e) {
    return walk_next(p, steps, e.xi);
}

/// eta_0 .. eta_6 of the generator family.
inline const StepSet& family_steps() {
    static const StepSet s{{-1, 1, 0}, {0, 1, 0}, {-1, 2, 0}, {1, -3, 1}, {0, -2, 1}, {1, -2, 1}, {0, -1, 1}};
    return s;
}

/// Coefficients (p, q, r) >= 0 with d = p eta_0 + q eta_1 + r eta_3, if they exist.
inline std::optional<std::array<long long, 3>> decompose_nonnegative(const LatticePoint& d) {
    long long r = d.c;
    long long p = r - d.a;
    long long q = d.b - p + 3 * r;
    if (p < 0 || q < 0 || r < 0) return std::nullopt;
    return std::array<long long, 3>{p, q, r};
}

}  // namespace rexmap

#endif
