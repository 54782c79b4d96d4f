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
 * @file rem.hpp
 * @brief The seven-tile rectangle exchange on X = [0,1]^2.
 *
 * Tile A_k is the set where the map translates by v_k = (eta_k . xi at root 1, eta_k . xi at root 2). Tiles are built
 * greedily as A_k = ((X - v_k) cap X) minus the earlier tiles, or from the closed-form list in x, x', y, y'.
 *
 * Stage k of a word uses xi^k, the normalization of W_k xi to first coordinate 1, so xi^0 = xi^L = xi.
 */

#ifndef REXMAP_REM_HPP
#define REXMAP_REM_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rexmap/cutproject.hpp"
#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"
#include "rexmap/pisot.hpp"
#include "rexmap/rectgeo.hpp"

namespace rexmap {

inline constexpr int kTiles = 7;

using TranslationVectors = std::array<ExactVec2, kTiles>;

/// v_i = (eta_i . (1, x, x'), eta_i . (1, y, y')).
inline TranslationVectors translation_vectors(const FieldElement& x, const FieldElement& xp, const FieldElement& y,
                                              const FieldElement& yp) {
    TranslationVectors v;
    const auto& steps = family_steps();
    for (int i = 0; i < kTiles; ++i) {
        const auto& s = steps[static_cast<std::size_t>(i)];
        Rational a(Integer(static_cast<long>(s.a))), b(Integer(static_cast<long>(s.b))), c(Integer(static_cast<long>(s.c)));
        v[static_cast<std::size_t>(i)] = {x * b + xp * c + a, y * b + yp * c + a};
    }
    return v;
}

inline TranslationVectors translation_vectors(const Basis& xi) { return translation_vectors(xi[1], xi[2], xi[1], xi[2]); }

struct REMPartition {
    FieldElement x, xp, y, yp;
    std::array<RectRegion, kTiles> tiles;
    TranslationVectors vectors;

    const FieldPtr& field() const { return x.field(); }
    RectRegion domain() const { return unit_square(field()); }

    /// T(A_k) = A_k + v_k.
    std::array<RectRegion, kTiles> image_tiles() const {
        std::array<RectRegion, kTiles> out;
        for (std::size_t k = 0; k < kTiles; ++k) out[k] = region_translate(tiles[k], vectors[k]);
        return out;
    }
};

/// Tiles in index order by intersect-and-subtract; PartitionIncomplete if they do not fill X.
inline REMPartition build_partition_greedy(const Basis& xi) {
    REMPartition rem{xi[1], xi[2], xi[1], xi[2], {}, translation_vectors(xi)};
    RectRegion X = unit_square(xi[0].field());
    RectRegion used;
    for (std::size_t k = 0; k < kTiles; ++k) {
        RectRegion cand = region_intersect(region_translate(X, -rem.vectors[k]), X);
        rem.tiles[k] = region_subtract(cand, used);
        used = region_union(used, rem.tiles[k]);
    }
    if (!(used == X)) throw PartitionIncomplete("greedy tiles do not cover the unit square");
    return rem;
}

inline REMPartition build_partition_greedy(const EigenData& e) { return build_partition_greedy(e.xi); }

/// The closed-form tile list; DegenerateTile names the first interval with empty interior.
///
/// The one exception is the first rectangle of A6, which is dropped when its x-interval is reversed; the two remaining
/// rectangles then overlap and their union is still the tile.
inline REMPartition build_partition_closed(const FieldElement& x, const FieldElement& xp, const FieldElement& y,
                                           const FieldElement& yp) {
    const FieldPtr& f = x.field();
    FieldElement zero(f, 0), one(f, 1);
    FieldElement ox = one - x, oy = one - y;
    FieldElement x2 = one - x * Rational(2), y2 = Rational(2) - y * Rational(2);
    FieldElement x3 = x * Rational(3) - xp, y3 = y * Rational(3) - yp - one;
    FieldElement x4 = x * Rational(2) - xp, y4 = y * Rational(2) - yp;

    auto rect = [&](const char* tile, const char* xs, const FieldElement& a, const FieldElement& b, const char* ys,
                    const FieldElement& c, const FieldElement& d) {
        if (cmp_x(a, b) >= 0) throw DegenerateTile(std::string(tile) + " x-interval " + xs + " is empty");
        if (cmp_y(c, d) >= 0) throw DegenerateTile(std::string(tile) + " y-interval " + ys + " is empty");
        return ExactRect{a, b, c, d};
    };

    REMPartition rem{x, xp, y, yp, {}, translation_vectors(x, xp, y, yp)};
    rem.tiles[0] = RectRegion(rect("A0", "[1-x,1]", ox, one, "[1-y,1]", oy, one));
    rem.tiles[1] = RectRegion(rect("A1", "[0,1-x]", zero, ox, "[0,1-y]", zero, oy));
    rem.tiles[2] = RectRegion(std::vector<ExactRect>{
        rect("A2", "[1-2x,1-x]", x2, ox, "[1-y,2-2y]", oy, y2),
        rect("A2", "[1-x,1]", ox, one, "[0,1-y]", zero, oy)});
    rem.tiles[3] = RectRegion(rect("A3", "[0,3x-x']", zero, x3, "[-1+3y-y',1]", y3, one));
    rem.tiles[4] = RectRegion(rect("A4", "[3x-x',1-x]", x3, ox, "[2y-y',1]", y4, one));
    rem.tiles[5] = RectRegion(rect("A5", "[0,2x-x']", zero, x4, "[1-y,-1+3y-y']", oy, y3));
    // [a,b] with a > b is the empty set; the first piece of A6 vanishes once 5x - x' <= 1.
    std::vector<ExactRect> a6;
    if (cmp_x(x2, x3) < 0) a6.push_back(rect("A6", "[1-2x,3x-x']", x2, x3, "[2-2y,-1+3y-y']", y2, y3));
    a6.push_back(rect("A6", "[2x-x',1-2x]", x4, x2, "[1-y,-1+3y-y']", oy, y3));
    a6.push_back(rect("A6", "[3x-x',1-x]", x3, ox, "[2-2y,2y-y']", y2, y4));
    rem.tiles[6] = RectRegion(a6);
    return rem;
}

inline REMPartition build_partition_closed(const Basis& xi) { return build_partition_closed(xi[1], xi[2], xi[1], xi[2]); }

struct PartitionCheck {
    bool tiles_disjoint = false;
    bool tiles_cover = false;
    bool images_disjoint = false;
    bool images_cover = false;

    bool ok() const { return tiles_disjoint && tiles_cover && images_disjoint && images_cover; }
};

inline PartitionCheck check_partition(const REMPartition& rem) {
    auto test = [&](const std::array<RectRegion, kTiles>& parts, bool& disjoint, bool& cover) {
        disjoint = true;
        for (std::size_t i = 0; i < kTiles; ++i)
            for (std::size_t j = i + 1; j < kTiles; ++j)
                if (!interiors_disjoint(parts[i], parts[j])) disjoint = false;
        cover = region_union(std::vector<RectRegion>(parts.begin(), parts.end())) == rem.domain();
    };
    PartitionCheck c;
    test(rem.tiles, c.tiles_disjoint, c.tiles_cover);
    test(rem.image_tiles(), c.images_disjoint, c.images_cover);
    return c;
}

inline bool partitions_equal(const REMPartition& a, const REMPartition& b) {
    for (std::size_t k = 0; k < kTiles; ++k)
        if (!(a.tiles[k] == b.tiles[k]) || !(a.vectors[k] == b.vectors[k])) return false;
    return true;
}

/// xi^0 .. xi^L for a word; xi^k is W_k xi scaled to first coordinate 1.
struct StageData {
    Word word;
    std::vector<Basis> xi;

    std::size_t stages() const { return xi.size() - 1; }
    const FieldElement& x(std::size_t k) const { return xi.at(k)[1]; }
    const FieldElement& xp(std::size_t k) const { return xi.at(k)[2]; }
};

inline Basis normalize_first(const Basis& v) {
    if (v[0].is_zero()) throw DegenerateEigenvector("stage vector has vanishing first coordinate");
    FieldElement inv = v[0].inverse();
    return {v[0] * inv, v[1] * inv, v[2] * inv};
}

inline StageData stage_data(const EigenData& e) {
    StageData s{e.word, {e.xi}};
    for (std::size_t k = 1; k <= e.word.length(); ++k)
        s.xi.push_back(normalize_first(apply_matrix(generator_matrix(e.word.letter(k)), s.xi.back())));
    return s;
}

/// M_{n_{k+1}} xi^k == x_k xi^{k+1} for k = 0..L-1, and xi^L == xi^0.
inline bool check_stage_vectors(const StageData& s) {
    for (std::size_t k = 0; k + 1 < s.xi.size(); ++k) {
        auto lhs = apply_matrix(generator_matrix(s.word.letter(k + 1)), s.xi[k]);
        for (std::size_t i = 0; i < 3; ++i)
            if (!(lhs[i] == s.x(k) * s.xi[k + 1][i])) return false;
    }
    const Basis& first = s.xi.front();
    const Basis& last = s.xi.back();
    return first[0] == last[0] && first[1] == last[1] && first[2] == last[2];
}

/// Strict quadrant signs (x, y) of the reference vectors of the single-generator exchange.
inline constexpr int kReferenceQuadrant[kTiles][2] = {{-1, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}, {1, 1}, {-1, -1}};

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<std::string> failures;
};

/**
 * Positive coordinates of xi at roots 1 and 2, each v_i inside (-1,1)^2 and in the same strict quadrant as the
 * reference. A zero coordinate of some v_i raises QuadrantDegenerate.
 */
inline AdmissibilityReport check_admissible(const Basis& xi) {
    AdmissibilityReport rep;
    const char* names[2] = {"x", "x'"};
    for (int i = 1; i <= 2; ++i) {
        if (sign_at(xi[static_cast<std::size_t>(i)], 1) <= 0) rep.failures.push_back(std::string(names[i - 1]) + " <= 0");
        if (sign_at(xi[static_cast<std::size_t>(i)], 2) <= 0)
            rep.failures.push_back(std::string(i == 1 ? "y" : "y'") + " <= 0");
    }
    auto v = translation_vectors(xi);
    Rational one(1);
    for (int i = 0; i < kTiles; ++i) {
        const auto& vi = v[static_cast<std::size_t>(i)];
        std::string tag = "v" + std::to_string(i);
        int sx = sign_at(vi.x, 1), sy = sign_at(vi.y, 2);
        if (sx == 0 || sy == 0) throw QuadrantDegenerate(tag + " has a zero coordinate");
        if (sign_at(vi.x - one, 1) >= 0 || sign_at(vi.x + one, 1) <= 0) rep.failures.push_back(tag + ".x outside (-1,1)");
        if (sign_at(vi.y - one, 2) >= 0 || sign_at(vi.y + one, 2) <= 0) rep.failures.push_back(tag + ".y outside (-1,1)");
        if (sx != kReferenceQuadrant[i][0] || sy != kReferenceQuadrant[i][1])
            rep.failures.push_back(tag + " leaves its reference quadrant");
    }
    rep.admissible = rep.failures.empty();
    return rep;
}

inline AdmissibilityReport check_admissible(const EigenData& e) { return check_admissible(e.xi); }
inline AdmissibilityReport check_admissible(const Word& w) { return check_admissible(eigenvectors(w)); }

struct MultistageReport {
    bool multistage = false;
    std::size_t failing_stage = 0;  // 0 when every stage passes
    std::vector<AdmissibilityReport> stages;  // stages[k-1] is stage k
};

/// Admissibility of every stage k = 1..L.
inline MultistageReport check_multistage(const StageData& s) {
    MultistageReport rep;
    for (std::size_t k = 1; k <= s.stages(); ++k) {
        AdmissibilityReport a;
        try {
            a = check_admissible(s.xi[k]);
        } catch (const QuadrantDegenerate& ex) {
            a.admissible = false;
            a.failures.push_back(ex.what());
        }
        rep.stages.push_back(a);
        if (!a.admissible && rep.failing_stage == 0) rep.failing_stage = k;
    }
    rep.multistage = rep.failing_stage == 0;
    return rep;
}

inline MultistageReport check_multistage(const Word& w) { return check_multistage(stage_data(eigenvectors(w))); }

inline bool on_square_boundary(const ExactPoint2& p) {
    Rational one(1);
    return sign_at(p.x, 1) == 0 || sign_at(p.x - one, 1) == 0 || sign_at(p.y, 2) == 0 || sign_at(p.y - one, 2) == 0;
}

inline bool in_square(const ExactPoint2& p) {
    Rational one(1);
    return sign_at(p.x, 1) >= 0 && sign_at(p.x - one, 1) <= 0 && sign_at(p.y, 2) >= 0 && sign_at(p.y - one, 2) <= 0;
}

/// Index of the tile whose interior contains p.
inline int locate_tile(const REMPartition& rem, const ExactPoint2& p) {
    if (!in_square(p)) throw OutOfDomain("point outside the unit square");
    if (on_square_boundary(p)) throw BoundaryUndefined("point on the boundary of the square");
    int found = -1;
    for (int k = 0; k < kTiles; ++k) {
        if (!rem.tiles[static_cast<std::size_t>(k)].contains_closed(p)) continue;
        if (found >= 0) throw BoundaryUndefined("point on the common boundary of A" + std::to_string(found) + " and A" +
                                                std::to_string(k));
        found = k;
    }
    if (found < 0) throw PartitionIncomplete("point of the square lies in no tile");
    return found;
}

inline ExactPoint2 apply(const REMPartition& rem, const ExactPoint2& p) {
    return p + rem.vectors[static_cast<std::size_t>(locate_tile(rem, p))];
}

struct OrbitResult {
    std::vector<ExactPoint2> points;
    std::vector<int> tiles;                  // tile index used at each step
    std::optional<std::size_t> boundary_hit;  // index of the iterate that landed on a boundary
};

/// Exact forward orbit; stops when an iterate has no well-defined image.
inline OrbitResult orbit(const REMPartition& rem, const ExactPoint2& p, std::size_t steps) {
    if (!in_square(p)) throw OutOfDomain("orbit start outside the unit square");
    OrbitResult r;
    r.points.push_back(p);
    for (std::size_t i = 0; i < steps; ++i) {
        int k;
        try {
            k = locate_tile(rem, r.points.back());
        } catch (const BoundaryUndefined&) {
            r.boundary_hit = i;
            break;
        }
        r.tiles.push_back(k);
        r.points.push_back(r.points.back() + rem.vectors[static_cast<std::size_t>(k)]);
    }
    return r;
}

/**
 * Long double orbit engine with exact fallback.
 *
 * The state is the exact start point plus an integer combination m of the steps eta_i, so iterates never drift: the
 * approximate coordinates are recomputed from m each step. A tile is accepted from the fast path only when the point
 * is more than 1e-9 inside one tile rectangle and more than 1e-9 outside every other; otherwise the exact lookup decides.
 */
class FastOrbit {
   public:
    static constexpr long double kMargin = 1e-9L;

    FastOrbit(const REMPartition& rem, ExactPoint2 start) : rem_(rem), start_(std::move(start)) {
        if (!in_square(start_)) throw OutOfDomain("orbit start outside the unit square");
        sx_ = start_.x.approx(1);
        sy_ = start_.y.approx(2);
        bx_ = {1.0L, rem.x.approx(1), rem.xp.approx(1)};
        by_ = {1.0L, rem.y.approx(2), rem.yp.approx(2)};
        for (int k = 0; k < kTiles; ++k)
            for (const auto& r : rem.tiles[static_cast<std::size_t>(k)].rects())
                boxes_.push_back({k, r.x0.approx(1), r.x1.approx(1), r.y0.approx(2), r.y1.approx(2)});
    }

    long double x() const { return sx_ + m_.a * bx_[0] + m_.b * bx_[1] + m_.c * bx_[2]; }
    long double y() const { return sy_ + m_.a * by_[0] + m_.b * by_[1] + m_.c * by_[2]; }
    const LatticePoint& offset() const { return m_; }
    std::size_t exact_fallbacks() const { return fallbacks_; }

    ExactPoint2 exact_point() const {
        Basis bx{FieldElement(rem_.field(), 1), rem_.x, rem_.xp};
        Basis by{FieldElement(rem_.field(), 1), rem_.y, rem_.yp};
        return {start_.x + lattice_value(bx, m_), start_.y + lattice_value(by, m_)};
    }

    /// Advances one step; returns false (state unchanged) if the current point has no image.
    bool step() {
        int k = classify_fast();
        if (k < 0) {
            ++fallbacks_;
            try {
                k = locate_tile(rem_, exact_point());
            } catch (const BoundaryUndefined&) {
                return false;
            }
        }
        m_ = m_ + family_steps()[static_cast<std::size_t>(k)];
        return true;
    }

   private:
    struct Box {
        int tile;
        long double x0, x1, y0, y1;
    };

    int classify_fast() const {
        long double px = x(), py = y();
        int inside = -1;
        for (const auto& b : boxes_) {
            long double d = std::min({px - b.x0, b.x1 - px, py - b.y0, b.y1 - py});
            if (d > kMargin) {
                if (inside >= 0) return -1;
                inside = b.tile;
            } else if (d > -kMargin) {
                return -1;
            }
        }
        return inside;
    }

    const REMPartition& rem_;
    ExactPoint2 start_;
    long double sx_ = 0, sy_ = 0;
    std::array<long double, 3> bx_{}, by_{};
    std::vector<Box> boxes_;
    LatticePoint m_{};
    std::size_t fallbacks_ = 0;
};

struct CoverageReport {
    double eps = 0;
    std::size_t cells_total = 0;
    std::size_t cells_visited = 0;
    double coverage = 0;
    std::size_t steps_run = 0;
    std::optional<std::size_t> boundary_hit;
    std::size_t exact_fallbacks = 0;
    std::string note = "heuristic witness of density, not a proof";
};

/// Fraction of an eps-grid of the square visited by the forward orbit within maxSteps (stops once complete).
inline CoverageReport empirical_minimality(const REMPartition& rem, const ExactPoint2& p, double eps,
                                           std::size_t max_steps) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    CoverageReport rep;
    rep.eps = eps;
    std::size_t side = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-12));
    rep.cells_total = side * side;
    std::vector<char> seen(rep.cells_total, 0);
    FastOrbit orb(rem, p);
    auto mark = [&] {
        auto cell = [&](long double v) {
            long double c = std::floor(v / eps);
            if (c < 0) c = 0;
            if (c > static_cast<long double>(side - 1)) c = static_cast<long double>(side - 1);
            return static_cast<std::size_t>(c);
        };
        std::size_t idx = cell(orb.x()) * side + cell(orb.y());
        if (!seen[idx]) {
            seen[idx] = 1;
            ++rep.cells_visited;
        }
    };
    mark();
    while (rep.steps_run < max_steps && rep.cells_visited < rep.cells_total) {
        if (!orb.step()) {
            rep.boundary_hit = rep.steps_run;
            break;
        }
        ++rep.steps_run;
        mark();
    }
    rep.exact_fallbacks = orb.exact_fallbacks();
    rep.coverage = static_cast<double>(rep.cells_visited) / static_cast<double>(rep.cells_total);
    return rep;
}

}  // namespace rexmap

#endif
