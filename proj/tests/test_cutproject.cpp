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

#include <algorithm>
#include <set>

#include "rexmap/cutproject.hpp"
#include "rexmap/renorm.hpp"

using namespace rexmap;

namespace {

EigenData gen(long n) { return eigenvectors(Word({n})); }

// Brute-force oracle: every triple in a cube, filtered exactly, ordered by exact z comparison.
std::vector<LatticePoint> brute_force(const EigenData& e, const FieldElement& zmax, long r) {
    std::vector<LatticePoint> pts;
    for (long a = -r; a <= r; ++a)
        for (long b = -r; b <= r; ++b)
            for (long c = -r; c <= r; ++c) {
                LatticePoint p{a, b, c};
                long double z = approx_z(e.xi, p);
                long double zm = zmax.approx(3);
                if (z < -1 || z > zm + 1) continue;
                FieldElement v = lattice_value(e.xi, p);
                if (in_window(v) && sign_at(v, 3) >= 0 && compare_at(v, zmax, 3) <= 0) pts.push_back(p);
            }
    std::sort(pts.begin(), pts.end(), [&](const LatticePoint& p, const LatticePoint& q) {
        return compare_at(lattice_value(e.xi, p), lattice_value(e.xi, q), 3) < 0;
    });
    return pts;
}

std::set<LatticePoint> seven() {
    const auto& s = family_steps();
    return {s.begin(), s.end()};
}

}  // namespace

TEST(ProjectXY, Examples) {
    EigenData e = gen(6);
    FieldElement t = e.lambda();
    ExactPoint2 p = project_xy(e, {-1, 1, 0});
    EXPECT_EQ(p.x, t - Rational(1));
    EXPECT_EQ(p.y, t - Rational(1));
    ExactPoint2 o = project_xy(e, {0, 0, 0});
    EXPECT_TRUE(o.x.is_zero() && o.y.is_zero());
    ExactPoint2 q = project_xy(e, {1, -3, 1});
    EXPECT_EQ(q.x, Rational(1) - t * Rational(3) + t * t);
}

TEST(ProjectZ, Examples) {
    EigenData e = gen(6);
    FieldElement t = e.lambda();
    EXPECT_TRUE(project_z(e, {0, 0, 0}).is_zero());
    EXPECT_EQ(project_z(e, {0, 1, 0}), t);
    EXPECT_EQ(sign_at(project_z(e, {-1, 1, 0}), 3), 1);
}

TEST(EnumerateWindow, ZeroHeight) {
    auto pts = enumerate_window(gen(6), Rational(0));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], (LatticePoint{0, 0, 0}));
}

TEST(EnumerateWindow, UpToLambda3) {
    EigenData e = gen(6);
    Rational top = e.field->root_enclosure(3).hi;
    auto pts = enumerate_window(e, top);
    auto oracle = brute_force(e, FieldElement(e.field, top), 6);
    EXPECT_EQ(pts, oracle);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1], (LatticePoint{0, 1, 0}));
}

TEST(EnumerateWindow, MatchesBruteForce) {
    for (long n : {6, 7, 9}) {
        EigenData e = gen(n);
        auto pts = enumerate_window(e, Rational(60));
        EXPECT_EQ(pts, brute_force(e, FieldElement(e.field, 60), 12)) << n;
    }
}

TEST(EnumerateWindow, DifferencesInFamily) {
    auto pts = enumerate_window(gen(6), Rational(200));
    auto fam = seven();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_TRUE(fam.count(pts[i + 1] - pts[i])) << pts[i + 1].to_string();
}

TEST(EnumerateWindow, StrictlyIncreasingZ) {
    EigenData e = gen(8);
    auto pts = enumerate_window(e, Rational(500));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        EXPECT_LT(compare_at(lattice_value(e.xi, pts[i]), lattice_value(e.xi, pts[i + 1]), 3), 0);
}

TEST(DiscoverStepSet, SevenAtSufficientHeight) {
    StepSet s = discover_step_set(gen(6), Rational(1000));
    EXPECT_EQ(s, family_steps());
    StepSet s10 = discover_step_set(gen(10), Rational(20000));
    EXPECT_EQ(s10, family_steps());
}

TEST(DiscoverStepSet, LowHeightGivesSubset) {
    // At zmax = 200 (n = 6) and zmax = 500 (n = 10) not every step occurs yet.
    for (auto [n, z] : {std::pair<long, long>{6, 200}, {10, 500}, {6, 30}}) {
        StepSet s = discover_step_set(gen(n), Rational(z));
        auto fam = seven();
        for (const auto& d : s) EXPECT_TRUE(fam.count(d));
        EXPECT_LT(s.size(), 7u);
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end(), [&](const LatticePoint& a, const LatticePoint& b) {
            return std::find(family_steps().begin(), family_steps().end(), a) <
                   std::find(family_steps().begin(), family_steps().end(), b);
        }));
    }
}

TEST(DiscoverStepSet, OrderedByZ) {
    EigenData e = gen(6);
    const auto& s = family_steps();
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        EXPECT_LT(compare_at(project_z(e, s[i]), project_z(e, s[i + 1]), 3), 0);
}

TEST(DiscoverStepSet, Insufficient) { EXPECT_THROW(discover_step_set(gen(6), Rational(0)), InsufficientPoints); }

TEST(WalkNext, OriginSuccessor) {
    EigenData e = gen(6);
    auto oracle = brute_force(e, FieldElement(e.field, 60), 12);
    ASSERT_GE(oracle.size(), 3u);
    EXPECT_EQ(walk_next({0, 0, 0}, family_steps(), e), oracle[1]);
    EXPECT_EQ(walk_next({0, 1, 0}, family_steps(), e), oracle[2]);
}

TEST(WalkNext, OutsideWindow) {
    EXPECT_THROW(walk_next({1, 0, 0}, family_steps(), gen(6)), PreconditionViolation);
}

TEST(WalkNext, NoValidStep) { EXPECT_THROW(walk_next({0, 0, 0}, StepSet{{1, 0, 0}}, gen(6)), NoValidStep); }

TEST(WalkNext, AgreesWithEnumeration) {
    for (long n = 6; n <= 20; ++n) {
        EigenData e = gen(n);
        auto pts = enumerate_window(e, Rational(200));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_EQ(walk_next(pts[i], family_steps(), e), pts[i + 1]) << n;
    }
}

TEST(Differences, NonnegativeCombination) {
    for (long n : {6, 8, 11}) {
        auto pts = enumerate_window(gen(n), Rational(2000));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) EXPECT_TRUE(decompose_nonnegative(pts[i + 1] - pts[i]).has_value());
    }
    auto d = decompose_nonnegative({0, -1, 1});
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ((*d)[0], 1);
    EXPECT_EQ((*d)[1], 1);
    EXPECT_EQ((*d)[2], 1);
}

TEST(PsiAction, ZCoordinate) {
    EigenData e = gen(6);
    LatticeAffine map = psi(Word({6}), 0);
    EXPECT_EQ(map({0, 0, 0}), (LatticePoint{1, -1, 0}));
    FieldElement t = e.lambda();
    for (const auto& p : enumerate_window(e, Rational(300))) {
        FieldElement lhs = lattice_value(e.xi, map(p));
        EXPECT_EQ(lhs, t * lattice_value(e.xi, p) + (Rational(1) - t));
    }
}
