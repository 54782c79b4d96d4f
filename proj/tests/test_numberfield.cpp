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
#include <cstdio>
#include <random>

#include "rexmap/numberfield.hpp"
#include "rexmap/pisot.hpp"

using namespace rexmap;

namespace {

FieldPtr q6() {
    static FieldPtr f = make_field(poly_for_generator(6));
    return f;
}

FieldElement el(const FieldPtr& f, long a, long b, long c) { return FieldElement(f, a, b, c); }

// Independent oracle: long double bisection on a monic cubic.
long double bisect_root(long double c2, long double c1, long double c0, long double lo, long double hi) {
    auto p = [&](long double x) { return ((x + c2) * x + c1) * x + c0; };
    for (int i = 0; i < 200; ++i) {
        long double mid = (lo + hi) / 2;
        if ((p(lo) < 0) == (p(mid) < 0)) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2;
}

// Independent oracle: schoolbook product of two quadratics, reduced by repeated substitution of t^3.
std::array<long, 3> mul_reduce(std::array<long, 3> a, std::array<long, 3> b, std::array<long, 3> poly /* c0,c1,c2 */) {
    std::array<long, 5> prod{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    for (int d = 4; d >= 3; --d) {
        long c = prod[static_cast<std::size_t>(d)];
        prod[static_cast<std::size_t>(d)] = 0;
        for (int k = 0; k < 3; ++k) prod[static_cast<std::size_t>(d - 3 + k)] -= c * poly[static_cast<std::size_t>(k)];
    }
    return {prod[0], prod[1], prod[2]};
}

}  // namespace

TEST(PolyForGenerator, Six) {
    CubicPoly p = poly_for_generator(6);
    EXPECT_EQ(p.c2, -7);
    EXPECT_EQ(p.c1, 6);
    EXPECT_EQ(p.c0, -1);
}

TEST(PolyForGenerator, Seven) {
    CubicPoly p = poly_for_generator(7);
    EXPECT_EQ(p.c2, -8);
    EXPECT_EQ(p.c1, 7);
    EXPECT_EQ(p.c0, -1);
}

TEST(PolyForGenerator, FiveRejected) { EXPECT_THROW(poly_for_generator(5), DomainError); }

TEST(Discriminant, ClosedForm) {
    auto formula = [](long n) { return n * n * n * n - 6 * n * n * n + 7 * n * n + 6 * n - 31; };
    EXPECT_EQ(discriminant_q(6), 257);
    EXPECT_EQ(discriminant_q(6), formula(6));
    EXPECT_EQ(discriminant_q(0), -31);
    EXPECT_GT(discriminant_q(7), 0);
    for (long n = 6; n <= 60; ++n) {
        EXPECT_EQ(discriminant_q(n), formula(n));
        EXPECT_EQ(discriminant_q(n), poly_for_generator(n).discriminant());
        EXPECT_GT(discriminant_q(n), 0);
    }
}

TEST(IsolateRoots, GeneratorBrackets) {
    RootIsolation iso = isolate_roots(poly_for_generator(6));
    EXPECT_GE(iso[1].lo, Rational(1, 5));
    EXPECT_LE(iso[1].hi, Rational(1, 4));
    EXPECT_GE(iso[2].lo, Rational(2, 3));
    EXPECT_LE(iso[2].hi, Rational(3, 4));
    EXPECT_GE(iso[3].lo, Rational(6));
    EXPECT_LE(iso[3].hi, Rational(7));
}

TEST(IsolateRoots, RefinedAgainstBisection) {
    FieldPtr f = q6();
    f->refine_to_width(1, Rational(1, 1000000));
    long double oracle[3] = {bisect_root(-7, 6, -1, 0, 0.5L), bisect_root(-7, 6, -1, 0.5L, 1), bisect_root(-7, 6, -1, 5, 7)};
    for (int i = 1; i <= 3; ++i) {
        f->refine_to_width(i, Rational(1, 1000000));
        Interval iv = f->root_enclosure(i);
        EXPECT_LE(iv.width(), Rational(1, 1000000));
        EXPECT_NEAR(static_cast<double>(iv.lo.get_d()), static_cast<double>(oracle[i - 1]), 1e-6);
        EXPECT_NEAR(static_cast<double>(iv.hi.get_d()), static_cast<double>(oracle[i - 1]), 1e-6);
    }
}

TEST(IsolateRoots, SturmOnSquareOfM6) {
    CubicPoly p = char_poly(generator_matrix(6) * generator_matrix(6));
    RootIsolation iso = isolate_roots(p);
    for (int i = 1; i <= 2; ++i) EXPECT_LT(iso[i].hi, iso[i + 1].lo);
    for (int i = 1; i <= 3; ++i) {
        EXPECT_LT(p(iso[i].lo) * p(iso[i].hi), 0);
    }
    // lambda_3(M6^2) = lambda_3(M6)^2 lies in (l^2, (l+1)^2) with l the root of q_6.
    FieldPtr f6 = q6();
    Interval l = f6->root_enclosure(3);
    FieldPtr g = make_field(p);
    Interval big = g->root_enclosure(3);
    EXPECT_GT(big.lo, l.lo * l.lo);
    EXPECT_LT(big.hi, (l.hi + 1) * (l.hi + 1));
}

TEST(IsolateRoots, NotTotallyReal) { EXPECT_THROW(isolate_roots(CubicPoly{Integer(-2), Integer(0), Integer(0)}), NotTotallyReal); }

TEST(FieldMul, Reduction) {
    FieldPtr f = q6();
    FieldElement t = FieldElement::generator(f);
    EXPECT_EQ(t * (t * t), el(f, 1, -6, 7));
    FieldElement e = el(f, 3, -2, 5);
    EXPECT_EQ(FieldElement(f, 1) * e, e);
    EXPECT_EQ((t - Rational(1)) * (t * t - Rational(1)), el(f, 2, -7, 6));
    auto oracle = mul_reduce({-1, 1, 0}, {-1, 0, 1}, {-1, 6, -7});
    EXPECT_EQ((t - Rational(1)) * (t * t - Rational(1)), el(f, oracle[0], oracle[1], oracle[2]));
}

TEST(FieldMul, RandomAgainstSchoolbook) {
    FieldPtr f = q6();
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-30, 30);
    for (int i = 0; i < 200; ++i) {
        std::array<long, 3> a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
        auto o = mul_reduce(a, b, {-1, 6, -7});
        EXPECT_EQ(el(f, a[0], a[1], a[2]) * el(f, b[0], b[1], b[2]), el(f, o[0], o[1], o[2]));
    }
}

TEST(FieldMul, MixedFields) {
    FieldPtr f7 = make_field(poly_for_generator(7));
    EXPECT_THROW(FieldElement::generator(q6()) * FieldElement::generator(f7), MixedFields);
}

TEST(FieldInverse, Examples) {
    FieldPtr f = q6();
    FieldElement t = FieldElement::generator(f);
    EXPECT_EQ(t.inverse(), el(f, 6, -7, 1));
    EXPECT_EQ(t * el(f, 6, -7, 1), FieldElement(f, 1));
    EXPECT_EQ(FieldElement(f, 1).inverse(), FieldElement(f, 1));
    EXPECT_THROW(FieldElement(f, 0).inverse(), DivisionByZero);
}

TEST(FieldInverse, RandomElements) {
    FieldPtr f = q6();
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-50, 50);
    int tested = 0;
    while (tested < 200) {
        FieldElement a(f, Rational(d(rng), 1 + std::labs(d(rng))), d(rng), d(rng));
        if (a.is_zero()) continue;
        EXPECT_EQ(a * a.inverse(), FieldElement(f, 1));
        ++tested;
    }
}

TEST(FieldAxioms, RandomSpotChecks) {
    FieldPtr f = q6();
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> d(-20, 20);
    auto rnd = [&] { return FieldElement(f, Rational(d(rng), 7), d(rng), Rational(d(rng), 3)); };
    for (int i = 0; i < 50; ++i) {
        FieldElement a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
    }
}

TEST(SignAt, Examples) {
    FieldPtr f = q6();
    FieldElement t = FieldElement::generator(f);
    EXPECT_EQ(sign_at(FieldElement(f, 0), 2), 0);
    FieldElement e = t * t + t - Rational(1);
    long double l1 = bisect_root(-7, 6, -1, 0, 0.5L), l3 = bisect_root(-7, 6, -1, 5, 7);
    EXPECT_LT(l1 * l1 + l1 - 1, 0);
    EXPECT_GT(l3 * l3 + l3 - 1, 0);
    EXPECT_EQ(sign_at(e, 1), -1);
    EXPECT_EQ(sign_at(e, 3), 1);
}

TEST(SignAt, StableUnderRefinement) {
    FieldPtr f = make_field(poly_for_generator(8));
    FieldElement t = FieldElement::generator(f);
    std::vector<FieldElement> es{t - Rational(1, 7), t * t - t + Rational(1, 5), t * Rational(3) - Rational(1, 2)};
    std::vector<int> before;
    for (const auto& e : es)
        for (int r = 1; r <= 3; ++r) before.push_back(sign_at(e, r));
    for (int r = 1; r <= 3; ++r) f->refine(r, 40);
    std::size_t i = 0;
    for (const auto& e : es)
        for (int r = 1; r <= 3; ++r) EXPECT_EQ(sign_at(e, r), before[i++]);
}

TEST(SignAt, CloseToZero) {
    FieldPtr f = q6();
    FieldElement t = FieldElement::generator(f);
    // t - q with q a rational within 1e-30 of lambda_1
    f->refine_to_width(1, Rational(1, Integer("1000000000000000000000000000000000")));
    Interval iv = f->root_enclosure(1);
    EXPECT_EQ(sign_at(t - iv.lo, 1), 1);
    EXPECT_EQ(sign_at(t - iv.hi, 1), -1);
}

TEST(RootBounds, BracketsAndMonotonicity) {
    for (long n = 6; n <= 40; ++n) {
        CubicPoly p = poly_for_generator(n);
        // p(a) and p(b) have opposite signs on each bracket
        auto opposite = [&](const Rational& a, const Rational& b) { return sgn(p(a)) * sgn(p(b)) < 0; };
        EXPECT_TRUE(opposite(Rational(1, n - 1), Rational(1, n - 2))) << n;
        EXPECT_TRUE(opposite(Rational(1) - Rational(1, n - 3), Rational(1) - Rational(1, n - 2))) << n;
        EXPECT_TRUE(opposite(Rational(n), Rational(n + 1))) << n;
    }
    for (long n = 6; n < 40; ++n) {
        FieldPtr a = make_field(poly_for_generator(n)), b = make_field(poly_for_generator(n + 1));
        EXPECT_GT(a->root_enclosure(1).lo, b->root_enclosure(1).hi);
        EXPECT_LT(a->root_enclosure(2).hi, b->root_enclosure(2).lo);
        EXPECT_LT(a->root_enclosure(3).hi, b->root_enclosure(3).lo);
    }
}

TEST(Decimal, AnnotationWithinEnclosure) {
    FieldPtr f = q6();
    FieldElement t = FieldElement::generator(f);
    std::string s = decimal_at(t, 1);
    char oracle[64];
    std::snprintf(oracle, sizeof oracle, "%.12Lf", bisect_root(-7, 6, -1, 0, 0.5L));
    EXPECT_EQ(s, oracle);
    Rational q = parse_rational("222674319607") / Rational(Integer("1000000000000"));
    EXPECT_EQ(sign_at(t - (q - Rational(1, Integer("1000000000000"))), 1), 1);
    EXPECT_EQ(sign_at(t - (q + Rational(1, Integer("1000000000000"))), 1), -1);
}

TEST(ParseRational, Forms) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-4"), Rational(-4));
    EXPECT_THROW(parse_rational("1/"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
}
