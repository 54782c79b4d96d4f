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
 * @file rectgeo.hpp
 * @brief Exact rectilinear regions with field-element coordinates.
 *
 * x-coordinates are read through the first real embedding and y-coordinates through the second. Regions are closed
 * sets identified with the closure of their interior; all boolean operations act on interiors and re-close the result,
 * so seams of measure zero vanish.
 *
 * The canonical form of a region is its vertical slab decomposition: the breakpoints are exactly the x-values where the
 * vertical cross-section changes, and within each slab the cross-section is a sorted list of maximal disjoint
 * y-intervals. Two regions are equal iff their canonical rectangle lists coincide element by element.
 */

#ifndef REXMAP_RECTGEO_HPP
#define REXMAP_RECTGEO_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"

namespace rexmap {

inline constexpr int kRootX = 1;
inline constexpr int kRootY = 2;

/// Planar point or vector: x at root 1, y at root 2.
struct ExactPoint2 {
    FieldElement x;
    FieldElement y;

    friend ExactPoint2 operator+(const ExactPoint2& a, const ExactPoint2& b) { return {a.x + b.x, a.y + b.y}; }
    friend ExactPoint2 operator-(const ExactPoint2& a, const ExactPoint2& b) { return {a.x - b.x, a.y - b.y}; }
    ExactPoint2 operator-() const { return {-x, -y}; }
    friend bool operator==(const ExactPoint2& a, const ExactPoint2& b) { return a.x == b.x && a.y == b.y; }
};

using ExactVec2 = ExactPoint2;

inline int cmp_x(const FieldElement& a, const FieldElement& b) { return compare_at(a, b, kRootX); }
inline int cmp_y(const FieldElement& a, const FieldElement& b) { return compare_at(a, b, kRootY); }

inline const FieldElement& max_x(const FieldElement& a, const FieldElement& b) { return cmp_x(a, b) >= 0 ? a : b; }
inline const FieldElement& min_x(const FieldElement& a, const FieldElement& b) { return cmp_x(a, b) <= 0 ? a : b; }
inline const FieldElement& max_y(const FieldElement& a, const FieldElement& b) { return cmp_y(a, b) >= 0 ? a : b; }
inline const FieldElement& min_y(const FieldElement& a, const FieldElement& b) { return cmp_y(a, b) <= 0 ? a : b; }

/// Closed rectangle [x0,x1] x [y0,y1] with x0 < x1 and y0 < y1.
struct ExactRect {
    FieldElement x0, x1, y0, y1;

    static ExactRect make(FieldElement x0, FieldElement x1, FieldElement y0, FieldElement y1) {
        if (cmp_x(x0, x1) >= 0 || cmp_y(y0, y1) >= 0) throw DomainError("degenerate rectangle");
        return ExactRect{std::move(x0), std::move(x1), std::move(y0), std::move(y1)};
    }

    /// Nullopt when the bounds do not enclose a nonempty interior.
    static std::optional<ExactRect> try_make(FieldElement x0, FieldElement x1, FieldElement y0, FieldElement y1) {
        if (cmp_x(x0, x1) >= 0 || cmp_y(y0, y1) >= 0) return std::nullopt;
        return ExactRect{std::move(x0), std::move(x1), std::move(y0), std::move(y1)};
    }

    bool contains_closed(const ExactPoint2& p) const {
        return cmp_x(x0, p.x) <= 0 && cmp_x(p.x, x1) <= 0 && cmp_y(y0, p.y) <= 0 && cmp_y(p.y, y1) <= 0;
    }

    bool contains_interior(const ExactPoint2& p) const {
        return cmp_x(x0, p.x) < 0 && cmp_x(p.x, x1) < 0 && cmp_y(y0, p.y) < 0 && cmp_y(p.y, y1) < 0;
    }

    ExactRect translated(const ExactVec2& v) const { return ExactRect{x0 + v.x, x1 + v.x, y0 + v.y, y1 + v.y}; }

    friend bool operator==(const ExactRect& a, const ExactRect& b) {
        return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
    }
};

/// Interior intersection of two rectangles.
inline std::optional<ExactRect> rect_intersect(const ExactRect& a, const ExactRect& b) {
    return ExactRect::try_make(max_x(a.x0, b.x0), min_x(a.x1, b.x1), max_y(a.y0, b.y0), min_y(a.y1, b.y1));
}

/// Closure of a minus the interior of b, as at most four rectangles.
inline std::vector<ExactRect> rect_subtract(const ExactRect& a, const ExactRect& b) {
    auto inter = rect_intersect(a, b);
    if (!inter) return {a};
    std::vector<ExactRect> out;
    const ExactRect& i = *inter;
    if (auto r = ExactRect::try_make(a.x0, i.x0, a.y0, a.y1)) out.push_back(*r);
    if (auto r = ExactRect::try_make(i.x1, a.x1, a.y0, a.y1)) out.push_back(*r);
    if (auto r = ExactRect::try_make(i.x0, i.x1, a.y0, i.y0)) out.push_back(*r);
    if (auto r = ExactRect::try_make(i.x0, i.x1, i.y1, a.y1)) out.push_back(*r);
    return out;
}

namespace detail {

inline void sort_unique(std::vector<FieldElement>& v, int root) {
    std::sort(v.begin(), v.end(), [root](const FieldElement& a, const FieldElement& b) {
        return compare_at(a, b, root) < 0;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Finite union of closed rectangles, stored in canonical slab form.
class RectRegion {
   public:
    RectRegion() = default;

    /// Union of arbitrary (possibly overlapping) rectangles.
    explicit RectRegion(const std::vector<ExactRect>& rects) { canonicalize(rects); }
    explicit RectRegion(const ExactRect& r) : rects_{r} {}

    const std::vector<ExactRect>& rects() const { return rects_; }
    bool empty() const { return rects_.empty(); }
    std::size_t size() const { return rects_.size(); }

    bool contains_closed(const ExactPoint2& p) const {
        return std::any_of(rects_.begin(), rects_.end(), [&](const ExactRect& r) { return r.contains_closed(p); });
    }

    friend bool operator==(const RectRegion& a, const RectRegion& b) { return a.rects_ == b.rects_; }

    /// Wraps rectangles already in canonical order without re-running the sweep.
    static RectRegion from_canonical(std::vector<ExactRect> rects) {
        RectRegion r;
        r.rects_ = std::move(rects);
        return r;
    }

   private:
    void canonicalize(const std::vector<ExactRect>& input) {
        rects_.clear();
        if (input.empty()) return;
        std::vector<FieldElement> xs;
        for (const auto& r : input) {
            xs.push_back(r.x0);
            xs.push_back(r.x1);
        }
        detail::sort_unique(xs, kRootX);

        using Cross = std::vector<std::pair<FieldElement, FieldElement>>;
        std::vector<std::pair<std::size_t, Cross>> slabs;  // (left breakpoint index, cross-section)
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            std::vector<std::pair<FieldElement, FieldElement>> iv;
            for (const auto& r : input)
                if (cmp_x(r.x0, xs[i]) <= 0 && cmp_x(xs[i + 1], r.x1) <= 0) iv.emplace_back(r.y0, r.y1);
            std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return cmp_y(a.first, b.first) < 0; });
            Cross merged;
            for (auto& seg : iv) {
                if (!merged.empty() && cmp_y(seg.first, merged.back().second) <= 0) {
                    if (cmp_y(seg.second, merged.back().second) > 0) merged.back().second = seg.second;
                } else {
                    merged.push_back(seg);
                }
            }
            slabs.emplace_back(i, std::move(merged));
        }

        auto same = [](const Cross& a, const Cross& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (!(a[k].first == b[k].first) || !(a[k].second == b[k].second)) return false;
            return true;
        };
        std::size_t i = 0;
        while (i < slabs.size()) {
            if (slabs[i].second.empty()) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < slabs.size() && same(slabs[j + 1].second, slabs[i].second)) ++j;
            const FieldElement& left = xs[slabs[i].first];
            const FieldElement& right = xs[slabs[j].first + 1];
            for (const auto& seg : slabs[i].second) rects_.push_back(ExactRect{left, right, seg.first, seg.second});
            i = j + 1;
        }
    }

    std::vector<ExactRect> rects_;
};

inline RectRegion unit_square(const FieldPtr& f) {
    return RectRegion(ExactRect{FieldElement(f, 0), FieldElement(f, 1), FieldElement(f, 0), FieldElement(f, 1)});
}

inline RectRegion region_union(const RectRegion& r, const RectRegion& s) {
    std::vector<ExactRect> all = r.rects();
    all.insert(all.end(), s.rects().begin(), s.rects().end());
    return RectRegion(all);
}

inline RectRegion region_union(const std::vector<RectRegion>& parts) {
    std::vector<ExactRect> all;
    for (const auto& p : parts) all.insert(all.end(), p.rects().begin(), p.rects().end());
    return RectRegion(all);
}

inline RectRegion region_intersect(const RectRegion& r, const RectRegion& s) {
    std::vector<ExactRect> out;
    for (const auto& a : r.rects())
        for (const auto& b : s.rects())
            if (auto i = rect_intersect(a, b)) out.push_back(*i);
    return RectRegion(out);
}

inline RectRegion region_subtract(const RectRegion& r, const RectRegion& s) {
    std::vector<ExactRect> pieces = r.rects();
    for (const auto& b : s.rects()) {
        std::vector<ExactRect> next;
        for (const auto& a : pieces) {
            auto parts = rect_subtract(a, b);
            next.insert(next.end(), parts.begin(), parts.end());
        }
        pieces = std::move(next);
        if (pieces.empty()) break;
    }
    return RectRegion(pieces);
}

/// Translation preserves the canonical order, so no sweep is needed.
inline RectRegion region_translate(const RectRegion& r, const ExactVec2& v) {
    std::vector<ExactRect> out;
    out.reserve(r.size());
    for (const auto& a : r.rects()) out.push_back(a.translated(v));
    return RectRegion::from_canonical(std::move(out));
}

inline bool region_equal(const RectRegion& r, const RectRegion& s) { return r == s; }

inline bool region_subset(const RectRegion& r, const RectRegion& s) { return region_subtract(r, s).empty(); }

inline bool interiors_disjoint(const RectRegion& r, const RectRegion& s) {
    for (const auto& a : r.rects())
        for (const auto& b : s.rects())
            if (rect_intersect(a, b)) return false;
    return true;
}

/// Image under (x, y) -> (ax x + bx, ay y + by) with ax > 0 at root 1 and ay > 0 at root 2.
inline RectRegion region_affine(const RectRegion& r, const FieldElement& ax, const FieldElement& bx,
                                const FieldElement& ay, const FieldElement& by) {
    if (sign_at(ax, kRootX) <= 0 || sign_at(ay, kRootY) <= 0)
        throw DomainError("region_affine requires positive scale factors");
    std::vector<ExactRect> out;
    out.reserve(r.size());
    for (const auto& a : r.rects()) out.push_back(ExactRect{ax * a.x0 + bx, ax * a.x1 + bx, ay * a.y0 + by, ay * a.y1 + by});
    return RectRegion::from_canonical(std::move(out));
}

/// Rational enclosure of the area, narrower than `width`.
inline Interval area_enclosure(const RectRegion& r, const Rational& width) {
    Interval total{Rational(0), Rational(0)};
    Rational share = width / Rational(static_cast<long>(4 * r.size() + 4));
    for (const auto& a : r.rects()) {
        EmbeddedValue dx(a.x1 - a.x0, kRootX), dy(a.y1 - a.y0, kRootY);
        Rational scale = abs(dx.enclosure().hi) + abs(dy.enclosure().hi) + 1;
        Interval ex = dx.refine(share / scale), ey = dy.refine(share / scale);
        total = total + ex * ey;
    }
    return total;
}

}  // namespace rexmap

#endif
