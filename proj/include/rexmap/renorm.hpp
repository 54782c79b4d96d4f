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
 * @file renorm.hpp
 * @brief First-return partitions, codings and exact checks of the renormalization conjugacies.
 *
 * The first return to Y is computed on regions: every rectangle of Y cut by the tiles is pushed forward under T,
 * the part that lands in Y is recorded as returned, and the rest is cut again by the tiles. A cell collects all
 * returned pieces that share a coding, the sequence of tile indices visited before the return.
 *
 * For a word with stage vectors xi^k the conjugacy at stage k is phi_k(x, y) = ((x + x_k - 1)/x_k, (y + y_k - 1)/y_k)
 * from Y_k = A_0 of stage k onto X, and on the lattice Psi_k(p) = M_{n_{k+1}}^T p + (1, -1, 0).
 */

#ifndef REXMAP_RENORM_HPP
#define REXMAP_RENORM_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rexmap/cutproject.hpp"
#include "rexmap/errors.hpp"
#include "rexmap/pisot.hpp"
#include "rexmap/rectgeo.hpp"
#include "rexmap/rem.hpp"

namespace rexmap {

struct CodedCell {
    std::string coding;  // tile indices, one character '0'..'6' per step
    RectRegion region;
    ExactVec2 return_vector;
    LatticePoint lattice_vector;  // sum of eta over the coding
};

struct ReturnPartition {
    RectRegion target;
    std::vector<CodedCell> cells;  // lexicographic by coding
};

inline constexpr std::size_t kDefaultMaxIter = 64;

/// Region-based first return of the exchange to Y.
inline ReturnPartition first_return_partition(const REMPartition& rem, const RectRegion& Y,
                                              std::size_t max_iter = kDefaultMaxIter) {
    if (Y.empty()) throw DomainError("first return target is empty");
    if (!region_subset(Y, rem.domain())) throw DomainError("first return target is not inside the square");

    struct Piece {
        ExactRect rect;  // current position
        int tile;
        std::string coding;
        ExactVec2 offset;
        LatticePoint eta;
    };
    struct Group {
        std::vector<ExactRect> rects;
        ExactVec2 offset;
        LatticePoint eta;
    };

    const FieldPtr& f = rem.field();
    ExactVec2 zero{FieldElement(f, 0), FieldElement(f, 0)};
    std::vector<Piece> work;
    auto split_by_tiles = [&](const ExactRect& r, const std::string& coding, const ExactVec2& off, const LatticePoint& eta) {
        for (int k = 0; k < kTiles; ++k)
            for (const auto& t : rem.tiles[static_cast<std::size_t>(k)].rects())
                if (auto part = rect_intersect(r, t)) work.push_back({*part, k, coding, off, eta});
    };
    for (const auto& y : Y.rects()) split_by_tiles(y, "", zero, LatticePoint{});

    std::map<std::string, Group> groups;
    while (!work.empty()) {
        Piece p = std::move(work.back());
        work.pop_back();
        if (p.coding.size() >= max_iter)
            throw IterationBudgetExceeded(max_iter, "first return not reached within " + std::to_string(max_iter) +
                                                        " steps (coding " + p.coding + ")");
        const auto k = static_cast<std::size_t>(p.tile);
        std::string coding = p.coding + static_cast<char>('0' + p.tile);
        ExactVec2 off = p.offset + rem.vectors[k];
        LatticePoint eta = p.eta + family_steps()[k];
        ExactRect moved = p.rect.translated(rem.vectors[k]);

        RectRegion here(moved);
        RectRegion inside = region_intersect(here, Y);
        if (!inside.empty()) {
            auto& g = groups[coding];
            if (g.rects.empty()) {
                g.offset = off;
                g.eta = eta;
            }
            for (const auto& r : inside.rects()) g.rects.push_back(r.translated(-off));
        }
        RectRegion outside = region_subtract(here, Y);
        for (const auto& r : outside.rects()) split_by_tiles(r, coding, off, eta);
    }

    ReturnPartition out{Y, {}};
    for (auto& [coding, g] : groups) out.cells.push_back({coding, RectRegion(g.rects), g.offset, g.eta});
    return out;
}

/// phi(x, y) = ((x + sx - 1)/sx, (y + sy - 1)/sy) mapping [1-sx,1] x [1-sy,1] onto the square.
struct AffineConjugacy {
    FieldElement sx;  // read at root 1
    FieldElement sy;  // read at root 2

    RectRegion forward(const RectRegion& r) const {
        FieldElement ix = sx.inverse(), iy = sy.inverse();
        Rational one(1);
        return region_affine(r, ix, (sx - one) * ix, iy, (sy - one) * iy);
    }

    RectRegion inverse(const RectRegion& r) const {
        Rational one(1);
        return region_affine(r, sx, one - sx, sy, one - sy);
    }

    ExactPoint2 forward(const ExactPoint2& p) const {
        Rational one(1);
        return {(p.x + sx - one) / sx, (p.y + sy - one) / sy};
    }

    ExactPoint2 inverse(const ExactPoint2& p) const {
        Rational one(1);
        return {sx * p.x + (one - sx), sy * p.y + (one - sy)};
    }

    /// rho(v) = (sx v_x, sy v_y), the linear part of phi^-1.
    ExactVec2 rho(const ExactVec2& v) const { return {sx * v.x, sy * v.y}; }
};

inline LatticePoint mat_apply(const MatrixZ3& m, const LatticePoint& p) {
    auto row = [&](int i) {
        Integer v = m(i, 0) * static_cast<long>(p.a) + m(i, 1) * static_cast<long>(p.b) + m(i, 2) * static_cast<long>(p.c);
        if (!v.fits_slong_p()) throw DomainError("lattice coordinate overflow");
        return static_cast<long long>(v.get_si());
    };
    return {row(0), row(1), row(2)};
}

struct ConjugacyCheck {
    bool vectors_ok = true;   // every return vector is rho(v_j) of the target
    bool regions_ok = true;   // phi maps the cells of each j onto target tile j
    bool lattice_ok = true;   // lattice vector of each cell equals M^T eta_j (when a matrix is given)
    bool cover_ok = true;     // cells are interior-disjoint and fill Y
    std::array<std::vector<std::string>, kTiles> codings;  // codings grouped by target tile
    std::vector<std::string> failures;

    bool passed() const { return vectors_ok && regions_ok && lattice_ok && cover_ok; }
};

/// Compares a first-return partition with phi^-1 o T_target o phi.
inline ConjugacyCheck check_conjugacy(const ReturnPartition& ret, const AffineConjugacy& phi, const REMPartition& target,
                                      const std::optional<MatrixZ3>& m = std::nullopt) {
    ConjugacyCheck c;
    std::array<std::vector<RectRegion>, kTiles> images;
    std::optional<MatrixZ3> mt;
    if (m) mt = m->transpose();
    for (const auto& cell : ret.cells) {
        int match = -1;
        for (int j = 0; j < kTiles && match < 0; ++j)
            if (cell.return_vector == phi.rho(target.vectors[static_cast<std::size_t>(j)])) match = j;
        if (match < 0) {
            c.vectors_ok = false;
            c.failures.push_back("cell " + cell.coding + ": return vector matches no scaled translation");
            continue;
        }
        const auto j = static_cast<std::size_t>(match);
        c.codings[j].push_back(cell.coding);
        RectRegion img = phi.forward(cell.region);
        if (!region_subset(img, target.tiles[j])) {
            c.regions_ok = false;
            c.failures.push_back("cell " + cell.coding + ": image not inside A" + std::to_string(match));
        }
        images[j].push_back(img);
        if (mt && !(cell.lattice_vector == mat_apply(*mt, family_steps()[j]))) {
            c.lattice_ok = false;
            c.failures.push_back("cell " + cell.coding + ": lattice vector " + cell.lattice_vector.to_string() +
                                 " differs from M^T eta_" + std::to_string(match));
        }
    }
    for (std::size_t j = 0; j < kTiles; ++j)
        if (!(region_union(images[j]) == target.tiles[j])) {
            c.regions_ok = false;
            c.failures.push_back("cells of A" + std::to_string(j) + " do not map onto the tile");
        }
    std::vector<RectRegion> parts;
    for (std::size_t a = 0; a < ret.cells.size(); ++a) {
        parts.push_back(ret.cells[a].region);
        for (std::size_t b = a + 1; b < ret.cells.size(); ++b)
            if (!interiors_disjoint(ret.cells[a].region, ret.cells[b].region)) {
                c.cover_ok = false;
                c.failures.push_back("cells " + ret.cells[a].coding + " and " + ret.cells[b].coding + " overlap");
            }
    }
    if (!(region_union(parts) == ret.target)) {
        c.cover_ok = false;
        c.failures.push_back("cells do not fill the target");
    }
    return c;
}

/// eta'_j = M^T eta_j.
inline std::array<LatticePoint, kTiles> eta_prime(const MatrixZ3& m) {
    std::array<LatticePoint, kTiles> out;
    MatrixZ3 mt = m.transpose();
    for (std::size_t j = 0; j < kTiles; ++j) out[j] = mat_apply(mt, family_steps()[j]);
    return out;
}

struct VerificationReport {
    long n = 0;
    bool passed = false;
    ReturnPartition partition;
    ConjugacyCheck check;
    std::array<LatticePoint, kTiles> eta_prime;
};

/// First return of T_{M_n} to A_0 against phi^-1 o T o phi with phi scaling by (lambda_1, lambda_2).
inline VerificationReport verify_single_renorm(long n, std::size_t max_iter = kDefaultMaxIter) {
    VerificationReport rep;
    rep.n = n;
    EigenData e = eigenvectors(Word({n}));
    REMPartition rem = build_partition_greedy(e);
    rep.partition = first_return_partition(rem, rem.tiles[0], max_iter);
    AffineConjugacy phi{e.xi[1], e.xi[1]};
    rep.check = check_conjugacy(rep.partition, phi, rem, generator_matrix(n));
    rep.eta_prime = eta_prime(generator_matrix(n));
    rep.passed = rep.check.passed();
    return rep;
}

struct ChainStep {
    std::size_t from = 0;  // stage whose first return is taken
    std::size_t to = 0;    // stage it is compared with
    bool passed = false;
    ConjugacyCheck check;
    std::size_t cells = 0;
};

struct ChainReport {
    MultistageReport multistage;
    std::vector<ChainStep> detailed;  // return of stage k vs stage k+1, k = 1..L-1
    std::vector<ChainStep> reverse;   // return of stage k+1 vs stage k
    ChainStep wrap;                   // return of stage L vs stage 1
    bool detailed_holds = false;
    bool reverse_holds = false;
    bool passed = false;

    std::string direction() const {
        if (detailed_holds && reverse_holds) return "both";
        if (detailed_holds) return "detailed";
        if (reverse_holds) return "reverse";
        return "neither";
    }
};

namespace detail {

inline ChainStep chain_step(const std::vector<REMPartition>& rems, const StageData& s, std::size_t from, std::size_t to,
                            const std::optional<MatrixZ3>& m, std::size_t max_iter) {
    ChainStep st;
    st.from = from;
    st.to = to;
    const REMPartition& src = rems[from];
    ReturnPartition ret = first_return_partition(src, src.tiles[0], max_iter);
    AffineConjugacy phi{s.x(from), s.x(from)};
    st.check = check_conjugacy(ret, phi, rems[to], m);
    st.cells = ret.cells.size();
    st.passed = st.check.passed();
    return st;
}

}  // namespace detail

/**
 * Stage conjugacies of a multistage word: for k = 1..L-1 the return of T_{W_k} to Y_k against T_{W_{k+1}} (with the
 * lattice identity for M_{n_{k+1}}), the same pairs in the reverse direction, and the closing step from stage L back
 * to stage 1 through M_{n_1}.
 */
inline ChainReport verify_multistage_renorm(const Word& w, std::size_t max_iter = kDefaultMaxIter) {
    ChainReport rep;
    StageData s = stage_data(eigenvectors(w));
    rep.multistage = check_multistage(s);
    if (!rep.multistage.multistage)
        throw NotMultistage("word " + w.to_string() + " fails at stage " + std::to_string(rep.multistage.failing_stage));
    const std::size_t L = s.stages();
    std::vector<REMPartition> rems;
    for (std::size_t k = 0; k <= L; ++k) rems.push_back(build_partition_greedy(s.xi[k]));

    rep.detailed_holds = true;
    rep.reverse_holds = true;
    for (std::size_t k = 1; k < L; ++k) {
        rep.detailed.push_back(detail::chain_step(rems, s, k, k + 1, generator_matrix(w.letter(k + 1)), max_iter));
        rep.detailed_holds = rep.detailed_holds && rep.detailed.back().passed;
        try {
            rep.reverse.push_back(detail::chain_step(rems, s, k + 1, k, std::nullopt, max_iter));
        } catch (const IterationBudgetExceeded& ex) {
            ChainStep failed{k + 1, k, false, {}, 0};
            failed.check.failures.push_back(ex.what());
            rep.reverse.push_back(failed);
        }
        rep.reverse_holds = rep.reverse_holds && rep.reverse.back().passed;
    }
    rep.wrap = detail::chain_step(rems, s, L, 1, generator_matrix(w.letter(1)), max_iter);
    rep.passed = rep.detailed_holds && rep.wrap.passed;
    return rep;
}

/// p -> m p + shift on Z^3.
struct LatticeAffine {
    MatrixZ3 m;
    LatticePoint shift;

    LatticePoint operator()(const LatticePoint& p) const { return mat_apply(m, p) + shift; }
    LatticePoint inverse(const LatticePoint& q) const { return mat_apply(m.inverse(), q - shift); }
};

/// Psi_k(p) = M_{n_{k+1}}^T p + (1, -1, 0).
inline LatticeAffine psi(const Word& w, std::size_t k) {
    if (k >= w.length()) throw DomainError("stage index out of range");
    return {generator_matrix(w.letter(k + 1)).transpose(), LatticePoint{1, -1, 0}};
}

struct LatticeConjugacyReport {
    bool passed = false;
    std::size_t sampled = 0;
    bool lands_in_y = true;
    bool inverse_ok = true;
    bool identity_ok = true;  // value^k(Psi p) == x_k value^{k+1}(p) + 1 - x_k as field elements
    bool order_ok = true;
    bool bijective_ok = true;  // images coincide with the Lambda_Y points in the matching z-range
    std::vector<std::string> failures;
};

/**
 * Psi_k on the first `samples` z-ordered window points of stage k+1: images lie in Lambda_{Y_k}, the inverse
 * recovers them, the affine identity holds exactly (so z is mapped by z -> x_k z + 1 - x_k at root 3), z-order is kept,
 * and the images are exactly the points of Lambda_{Y_k} in the corresponding z-range.
 */
inline LatticeConjugacyReport lattice_conjugacy_check(const Word& w, std::size_t k, std::size_t samples) {
    LatticeConjugacyReport rep;
    StageData s = stage_data(eigenvectors(w));
    if (k >= s.stages()) throw DomainError("stage index out of range");
    const Basis& src = s.xi[k + 1];
    const Basis& dst = s.xi[k];
    const FieldElement& xk = s.x(k);
    const FieldPtr& f = xk.field();
    Rational one(1);
    LatticeAffine map = psi(w, k);

    std::vector<LatticePoint> pts;
    for (Rational zmax(64); pts.size() < samples; zmax *= 2) {
        pts = enumerate_window(src, zmax);
        if (zmax > Rational(Integer(1) << 40)) throw InsufficientPoints("cannot reach the requested sample count");
    }
    pts.resize(samples);
    rep.sampled = pts.size();

    FieldElement ylo = one - xk;
    std::vector<LatticePoint> images;
    for (const auto& p : pts) {
        LatticePoint q = map(p);
        images.push_back(q);
        FieldElement vq = lattice_value(dst, q);
        if (!(in_half_open(vq, ylo, FieldElement(f, 1), 1) && in_half_open(vq, ylo, FieldElement(f, 1), 2))) {
            rep.lands_in_y = false;
            rep.failures.push_back("Psi" + p.to_string() + " outside Lambda_Y");
        }
        if (!(map.inverse(q) == p)) {
            rep.inverse_ok = false;
            rep.failures.push_back("inverse fails at " + p.to_string());
        }
        if (!(vq == xk * lattice_value(src, p) + (one - xk))) {
            rep.identity_ok = false;
            rep.failures.push_back("affine identity fails at " + p.to_string());
        }
    }
    std::vector<LatticePoint> sorted = images;
    sort_by_z(dst, sorted);
    if (!(sorted == images)) {
        rep.order_ok = false;
        rep.failures.push_back("z-order not preserved");
    }
    FieldElement z0 = lattice_value(dst, images.front());
    FieldElement z1 = lattice_value(dst, images.back());
    LatticeBox box{ylo, FieldElement(f, 1), ylo, FieldElement(f, 1), z0, z1};
    if (!(enumerate_box(dst, box) == images)) {
        rep.bijective_ok = false;
        rep.failures.push_back("images differ from Lambda_Y in the matching z-range");
    }
    rep.passed = rep.lands_in_y && rep.inverse_ok && rep.identity_ok && rep.order_ok && rep.bijective_ok;
    return rep;
}

}  // namespace rexmap

#endif
