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

#include <cmath>

#include "rexmap/demgeneral.hpp"
#include "rexmap/rem.hpp"

using namespace rexmap;

namespace {

// Cube scan with direct membership tests.
std::vector<LatticePoint> brute_force(const SmoothWindow& w, const std::array<long double, 3>& lam, long double zmax,
                                      long r) {
    std::vector<std::pair<long double, LatticePoint>> found;
    for (long a = -r; a <= r; ++a)
        for (long b = -r; b <= r; ++b)
            for (long c = -r; c <= r; ++c) {
                long double u[3];
                for (int i = 0; i < 3; ++i) u[i] = a + b * lam[i] + c * lam[i] * lam[i];
                if (u[2] >= 0 && u[2] <= zmax && w.contains(u[0], u[1])) found.push_back({u[2], {a, b, c}});
            }
    std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<LatticePoint> out;
    for (auto& f : found) out.push_back(f.second);
    return out;
}

std::array<long double, 3> roots(long n) {
    auto f = make_field(poly_for_generator(n));
    return {FieldElement::generator(f).approx(1), FieldElement::generator(f).approx(2), FieldElement::generator(f).approx(3)};
}

}  // namespace

TEST(SmoothWindow, Membership) {
    SmoothWindow d = SmoothWindow::disk(0, 0, 1);
    EXPECT_TRUE(d.contains(0, 0));
    EXPECT_TRUE(d.contains(1, 0));
    EXPECT_FALSE(d.contains(0.8L, 0.8L));
    EXPECT_NEAR(static_cast<double>(d.boundary_distance(0.5L, 0)), 0.5, 1e-15);
    SmoothWindow s = SmoothWindow::square(0, 0, 1);
    EXPECT_TRUE(s.contains(0, 0));
    EXPECT_FALSE(s.contains(1, 0.5L));
    EXPECT_NEAR(static_cast<double>(s.boundary_distance(2, 2)), -std::sqrt(2.0), 1e-15);
    SmoothWindow e = SmoothWindow::ellipse(0, 0, 2, 1);
    EXPECT_TRUE(e.contains(1.9L, 0));
    EXPECT_FALSE(e.contains(0, 1.1L));
}

TEST(EnumerateGeneral, MatchesBruteForce) {
    auto lam = roots(6);
    for (const auto& w : {SmoothWindow::disk(0, 0, 1), SmoothWindow::square(0, 0, 1), SmoothWindow::ellipse(0.2L, 0.1L, 1.3L, 0.7L)})
        EXPECT_EQ(enumerate_general(w, lam, 80, nullptr), brute_force(w, lam, 80, 14)) << w.describe();
}

TEST(BuildGeneral, Disk) {
    GeneralDEM dem = build_general_dem(SmoothWindow::disk(0, 0, 1), 6, 500);
    EXPECT_GE(dem.steps.size(), 2u);
    EXPECT_EQ(dem.vectors.size(), dem.steps.size());
    EXPECT_EQ(dem.banner, "approximate: floating-point construction");
    for (std::size_t i = 0; i + 1 < dem.steps.size(); ++i) EXPECT_LT(dem.z(dem.steps[i]), dem.z(dem.steps[i + 1]));
    auto pts = brute_force(dem.window, dem.lambda, 500, 40);
    EXPECT_EQ(dem.points, pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        EXPECT_NE(std::find(dem.steps.begin(), dem.steps.end(), pts[i + 1] - pts[i]), dem.steps.end());
}

TEST(BuildGeneral, SquareMatchesExactSteps) {
    GeneralDEM dem = build_general_dem(SmoothWindow::square(0, 0, 1), 6, 1000);
    EXPECT_EQ(dem.steps, family_steps());
}

TEST(BuildGeneral, Insufficient) {
    EXPECT_THROW(build_general_dem(SmoothWindow::disk(0, 0, 1), 6, 0), InsufficientPoints);
}

TEST(OrbitGeneral, ZeroSteps) {
    GeneralDEM dem = build_general_dem(SmoothWindow::disk(0, 0, 1), 6, 500);
    auto o = orbit_general(dem, 0.1L, 0.2L, 0);
    ASSERT_EQ(o.size(), 1u);
    EXPECT_EQ(o[0].x, 0.1L);
    EXPECT_EQ(o[0].y, 0.2L);
    EXPECT_THROW(orbit_general(dem, 2, 2, 5), OutOfWindow);
}

TEST(OrbitGeneral, DiskStaysInside) {
    GeneralDEM dem = build_general_dem(SmoothWindow::disk(0, 0, 1), 6, 500);
    auto o = orbit_general(dem, 0.1L, 0.2L, 10000);
    ASSERT_EQ(o.size(), 10001u);
    for (const auto& p : o) EXPECT_LE(std::hypot(p.x, p.y), 1.0L + 1e-12L);
    double c1 = general_coverage(dem, std::vector<GeneralOrbitPoint>(o.begin(), o.begin() + 500), 0.05);
    double c2 = general_coverage(dem, o, 0.05);
    EXPECT_LE(c1, c2);
    EXPECT_GT(c2, 0.9);
}

TEST(OrbitGeneral, SquareAgreesWithExactOrbit) {
    GeneralDEM dem = build_general_dem(SmoothWindow::square(0, 0, 1), 6, 1000);
    EigenData e = eigenvectors(Word({6}));
    REMPartition rem = build_partition_greedy(e);
    ExactPoint2 start{FieldElement(e.field, Rational(1, 3)), FieldElement(e.field, Rational(1, 7))};
    FastOrbit exact(rem, start);
    auto o = orbit_general(dem, 1.0L / 3, 1.0L / 7, 1000);
    ASSERT_EQ(o.size(), 1001u);
    for (std::size_t i = 0; i <= 1000; ++i) {
        EXPECT_NEAR(static_cast<double>(o[i].x), static_cast<double>(exact.x()), 1e-6) << i;
        EXPECT_NEAR(static_cast<double>(o[i].y), static_cast<double>(exact.y()), 1e-6) << i;
        if (i < 1000) ASSERT_TRUE(exact.step());
    }
}
