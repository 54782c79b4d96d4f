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

#include <gtest/gtest.h>

#include "rexmap/rem.hpp"

using namespace rexmap;

namespace {

REMPartition closed_for(const Word& w) { return build_partition_closed(eigenvectors(w).xi); }

ExactPoint2 rational_point(const FieldPtr& f, Rational x, Rational y) { return {FieldElement(f, x), FieldElement(f, y)}; }

// Tile index from approximate interior membership, or -1 if ambiguous.
int approx_tile(const REMPartition& rem, long double px, long double py) {
    int found = -1;
    for (int k = 0; k < kTiles; ++k)
        for (const auto& r : rem.tiles[static_cast<std::size_t>(k)].rects())
            if (r.x0.approx(1) < px && px < r.x1.approx(1) && r.y0.approx(2) < py && py < r.y1.approx(2)) {
                if (found >= 0 && found != k) return -1;
                found = k;
            }
    return found;
}

}  // namespace

TEST(Partition, GreedyMatchesClosedGenerators) {
    for (long n = 6; n <= 12; ++n) {
        EigenData e = eigenvectors(Word({n}));
        REMPartition g = build_partition_greedy(e), c = build_partition_closed(e.xi);
        EXPECT_TRUE(partitions_equal(g, c)) << n;
        EXPECT_TRUE(check_partition(c).ok()) << n;
    }
}

TEST(Partition, GreedyMatchesClosedWords) {
    for (long a = 6; a <= 9; ++a)
        for (long b = 6; b <= 9; ++b) {
            Word w({a, b});
            EigenData e = eigenvectors(w);
            if (!check_admissible(e).admissible) continue;
            EXPECT_TRUE(partitions_equal(build_partition_greedy(e), build_partition_closed(e.xi))) << w.to_string();
        }
}

TEST(Partition, TilesForSix) {
    EigenData e = eigenvectors(Word({6}));
    REMPartition rem = build_partition_closed(e.xi);
    FieldPtr f = e.field;
    FieldElement x = e.xi[1], xp = e.xi[2], one(f, 1), zero(f, 0);
    EXPECT_EQ(rem.tiles[0], RectRegion(ExactRect{one - x, one, one - x, one}));
    EXPECT_EQ(rem.tiles[1], RectRegion(ExactRect{zero, one - x, zero, one - x}));
    EXPECT_EQ(rem.tiles[3], RectRegion(ExactRect{zero, x * Rational(3) - xp, x * Rational(3) - xp - one, one}));
    EXPECT_EQ(rem.tiles[6].size(), 3u);
    for (std::size_t k = 0; k < kTiles; ++k) EXPECT_FALSE(rem.tiles[k].empty());
    // v_k = (eta_k . xi) at both roots.
    for (std::size_t k = 0; k < kTiles; ++k) {
        EXPECT_EQ(rem.vectors[k].x, lattice_value(e.xi, family_steps()[k]));
        EXPECT_EQ(rem.vectors[k].x, rem.vectors[k].y);
    }
}

TEST(Partition, DegenerateTile) {
    EigenData e = eigenvectors(Word({6}));
    FieldPtr f = e.field;
    FieldElement x(f, Rational(1, 2)), xp(f, Rational(1, 4));
    EXPECT_THROW(build_partition_closed(x, xp, x, xp), DegenerateTile);
}

TEST(Partition, SixthTileShape) {
    for (long n = 7; n <= 12; ++n) {
        REMPartition rem = closed_for(Word({n}));
        EXPECT_TRUE(check_partition(rem).ok()) << n;
    }
}

TEST(Admissibility, Examples) {
    for (long n = 6; n <= 20; ++n) EXPECT_TRUE(check_admissible(Word({n})).admissible) << n;
    EXPECT_FALSE(check_admissible(parse_word("8,6")).admissible);
    EXPECT_TRUE(check_admissible(parse_word("7,7,8,6")).admissible);
    EXPECT_TRUE(check_admissible(parse_word("6,7")).admissible);
}

TEST(Multistage, Examples) {
    MultistageReport one = check_multistage(Word({6}));
    EXPECT_TRUE(one.multistage);
    EXPECT_EQ(one.stages.size(), 1u);
    MultistageReport four = check_multistage(parse_word("7,7,8,6"));
    EXPECT_TRUE(four.multistage);
    EXPECT_EQ(four.stages.size(), 4u);
    MultistageReport bad = check_multistage(parse_word("6,8"));
    EXPECT_FALSE(bad.multistage);
    EXPECT_EQ(bad.failing_stage, 1u);
}

TEST(StageVectors, Consistent) {
    StageData s = stage_data(eigenvectors(parse_word("7,7,8,6")));
    EXPECT_EQ(s.stages(), 4u);
    EXPECT_TRUE(check_stage_vectors(s));
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(s.xi[0][c], s.xi[4][c]);
}

TEST(Apply, BoundaryAndInterior) {
    REMPartition rem = closed_for(Word({6}));
    FieldPtr f = rem.field();
    EXPECT_THROW(apply(rem, rational_point(f, 0, 0)), BoundaryUndefined);
    EXPECT_THROW(apply(rem, rational_point(f, 1, 1)), BoundaryUndefined);
    EXPECT_THROW(apply(rem, rational_point(f, 2, 0)), OutOfDomain);
    ExactPoint2 p = rational_point(f, Rational(1, 2), Rational(1, 2));
    int k = locate_tile(rem, p);
    EXPECT_EQ(k, approx_tile(rem, 0.5L, 0.5L));
    EXPECT_EQ(apply(rem, p), p + rem.vectors[static_cast<std::size_t>(k)]);
    EXPECT_TRUE(in_square(apply(rem, p)));
}

TEST(Apply, GridAgreesWithApproximateLookup) {
    for (const char* w : {"6", "9", "7,7,8,6"}) {
        REMPartition rem = closed_for(parse_word(w));
        for (long i = 1; i < 40; ++i)
            for (long j = 1; j < 40; ++j) {
                int a = approx_tile(rem, i / 40.0L, j / 40.0L);
                if (a < 0) continue;
                EXPECT_EQ(locate_tile(rem, rational_point(rem.field(), Rational(i, 40), Rational(j, 40))), a) << w;
            }
    }
}

TEST(Orbit, ZeroAndLong) {
    REMPartition rem = closed_for(Word({6}));
    ExactPoint2 p = rational_point(rem.field(), Rational(1, 3), Rational(1, 7));
    OrbitResult r0 = orbit(rem, p, 0);
    ASSERT_EQ(r0.points.size(), 1u);
    EXPECT_EQ(r0.points[0], p);
    OrbitResult r = orbit(rem, p, 2000);
    EXPECT_EQ(r.points.size(), 2001u);
    EXPECT_FALSE(r.boundary_hit.has_value());
    for (const auto& q : r.points) EXPECT_TRUE(in_square(q));

    FastOrbit fast(rem, p);
    for (std::size_t i = 0; i < 10000; ++i) {
        ASSERT_TRUE(fast.step());
        if (i + 1 < r.points.size()) {
            ASSERT_EQ(fast.exact_point(), r.points[i + 1]);
        }
        ASSERT_GE(fast.x(), 0.0L);
        ASSERT_LE(fast.x(), 1.0L);
        ASSERT_GE(fast.y(), 0.0L);
        ASSERT_LE(fast.y(), 1.0L);
    }
    EXPECT_TRUE(in_square(fast.exact_point()));
}

TEST(Orbit, BoundaryStart) {
    REMPartition rem = closed_for(Word({6}));
    OrbitResult r = orbit(rem, rational_point(rem.field(), 0, 0), 5);
    ASSERT_TRUE(r.boundary_hit.has_value());
    EXPECT_EQ(*r.boundary_hit, 0u);
}

TEST(LatticeShadow, WalkStepIsTileIndex) {
    for (long n = 6; n <= 10; ++n) {
        EigenData e = eigenvectors(Word({n}));
        REMPartition rem = build_partition_closed(e.xi);
        auto pts = enumerate_window(e, Rational(200));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            LatticePoint d = pts[i + 1] - pts[i];
            auto it = std::find(family_steps().begin(), family_steps().end(), d);
            ASSERT_NE(it, family_steps().end());
            auto k = static_cast<std::size_t>(it - family_steps().begin());
            ExactPoint2 p = project_xy(e, pts[i]);
            EXPECT_TRUE(rem.tiles[k].contains_closed(p)) << n << " " << pts[i].to_string();
            EXPECT_EQ(p + rem.vectors[k], project_xy(e, pts[i + 1]));
            try {
                EXPECT_EQ(locate_tile(rem, p), static_cast<int>(k));
            } catch (const BoundaryUndefined&) {
            }
        }
    }
}

TEST(Coverage, Trivial) {
    REMPartition rem = closed_for(Word({6}));
    CoverageReport r = empirical_minimality(rem, rational_point(rem.field(), Rational(1, 3), Rational(1, 7)), 1.0, 10);
    EXPECT_EQ(r.cells_total, 1u);
    EXPECT_DOUBLE_EQ(r.coverage, 1.0);
    EXPECT_EQ(r.steps_run, 0u);
    EXPECT_THROW(empirical_minimality(rem, rational_point(rem.field(), 0, 0), 0.0, 10), DomainError);
}

TEST(Coverage, Generator) {
    REMPartition rem = closed_for(Word({6}));
    CoverageReport r = empirical_minimality(rem, rational_point(rem.field(), Rational(1, 3), Rational(1, 7)), 0.05, 200000);
    EXPECT_DOUBLE_EQ(r.coverage, 1.0);
    EXPECT_EQ(r.cells_total, 400u);
}

TEST(Coverage, Multistage) {
    REMPartition rem = closed_for(parse_word("7,7,8,6"));
    CoverageReport r = empirical_minimality(rem, rational_point(rem.field(), Rational(1, 3), Rational(1, 7)), 0.1, 100000);
    EXPECT_DOUBLE_EQ(r.coverage, 1.0);
}
