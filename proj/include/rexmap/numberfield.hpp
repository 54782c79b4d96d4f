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
 * @file numberfield.hpp
 * @brief Exact arithmetic in a totally real cubic field Q[t]/(q).
 *
 * A field element is a canonical triple r0 + r1 t + r2 t^2 of arbitrary precision rationals. The ambient polynomial q
 * is a monic integer cubic with three distinct real roots, so the field has three real embeddings t -> lambda_i
 * (i = 1, 2, 3, ascending). Every comparison in the library reduces to sign_at(e, i), the exact sign of the real number
 * e(lambda_i):
 *
 * - the zero test is a coefficient test (valid because q is irreducible),
 * - otherwise a double-precision interval evaluation with outward rounding is tried first,
 * - and if it cannot decide, the rational isolating interval of lambda_i is bisected until the rational interval
 *   evaluation of e excludes zero.
 *
 * Root enclosures are cached inside the shared CubicField and refined on demand under a mutex, so field elements are
 * cheap immutable values that may be shared across threads.
 */

#ifndef REXMAP_NUMBERFIELD_HPP
#define REXMAP_NUMBERFIELD_HPP

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rexmap/errors.hpp"

namespace rexmap {

using Integer = mpz_class;
using Rational = mpq_class;

/// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    std::array<Rational, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {*mn, *mx};
}

inline Interval operator*(const Rational& s, const Interval& a) {
    Rational l = s * a.lo, h = s * a.hi;
    if (l > h) std::swap(l, h);
    return {l, h};
}

/// Closed double interval; always an outward-rounded enclosure, possibly infinite.
struct DoubleInterval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// mpq_get_d truncates; one ulp on each side restores containment.
inline DoubleInterval enclose(const Rational& q) {
    double d = q.get_d();
    if (!std::isfinite(d)) return {};
    return {down(d), up(d)};
}

inline DoubleInterval enclose(const Interval& iv) {
    double l = iv.lo.get_d(), h = iv.hi.get_d();
    if (!std::isfinite(l) || !std::isfinite(h)) return {};
    return {down(l), up(h)};
}

inline DoubleInterval add(const DoubleInterval& a, const DoubleInterval& b) {
    return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

inline DoubleInterval mul(const DoubleInterval& a, const DoubleInterval& b) {
    double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double mn = p[0], mx = p[0];
    for (double v : p) {
        if (std::isnan(v)) return {};
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {down(mn), up(mx)};
}

}  // namespace detail

/// Monic cubic x^3 + c2 x^2 + c1 x + c0 with integer coefficients.
struct CubicPoly {
    Integer c0;
    Integer c1;
    Integer c2;

    Rational operator()(const Rational& x) const { return ((x + c2) * x + c1) * x + c0; }

    /// b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd for x^3 + b x^2 + c x + d.
    Integer discriminant() const {
        const Integer& b = c2;
        const Integer& c = c1;
        const Integer& d = c0;
        return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
    }

    /// Rational roots of a monic integer polynomial are integer divisors of c0.
    bool has_rational_root() const {
        if (c0 == 0) return true;
        Integer m = abs(c0);
        if (m > Integer("1000000000000")) throw DomainError("constant term too large for the rational root test");
        auto is_root = [&](const Integer& r) { return ((r + c2) * r + c1) * r + c0 == 0; };
        for (Integer d = 1; d * d <= m; ++d) {
            if (m % d != 0) continue;
            Integer e = m / d;
            if (is_root(d) || is_root(-d) || is_root(e) || is_root(-e)) return true;
        }
        return false;
    }

    bool irreducible() const { return !has_rational_root(); }

    std::string to_string() const {
        std::ostringstream os;
        os << "x^3";
        auto term = [&](const Integer& c, const char* mono) {
            if (c == 0) return;
            os << (c < 0 ? " - " : " + ");
            Integer a = abs(c);
            if (a != 1 || mono[0] == '\0') os << a.get_str();
            os << mono;
        };
        term(c2, "x^2");
        term(c1, "x");
        term(c0, "");
        return os.str();
    }

    friend bool operator==(const CubicPoly& a, const CubicPoly& b) {
        return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
    }
};

inline std::ostream& operator<<(std::ostream& os, const CubicPoly& p) { return os << p.to_string(); }

/// q_n(x) = x^3 - (n+1) x^2 + n x - 1, the characteristic polynomial of the generator M_n.
inline CubicPoly poly_for_generator(long n) {
    if (n < 6) throw DomainError("generator index must be >= 6, got " + std::to_string(n));
    return CubicPoly{Integer(-1), Integer(n), Integer(-(n + 1))};
}

/// n^4 - 6n^3 + 7n^2 + 6n - 31, the discriminant of q_n.
inline Integer discriminant_q(long n) {
    Integer m(n);
    return m * m * m * m - 6 * m * m * m + 7 * m * m + 6 * m - 31;
}

/// Three disjoint isolating intervals, ascending; index 0 holds lambda_1.
struct RootIsolation {
    std::array<Interval, 3> roots;

    const Interval& operator[](int root_index) const { return roots.at(static_cast<std::size_t>(root_index - 1)); }
};

namespace detail {

// Dense polynomial over Q, ascending coefficients; only used for Sturm chains and gcds.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Rational eval(const QPoly& p, const Rational& x) {
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

// Returns (quotient, remainder).
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    trim(a);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QPoly to_qpoly(const CubicPoly& p) { return {Rational(p.c0), Rational(p.c1), Rational(p.c2), Rational(1)}; }

inline int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : chain) {
        int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain{p, derivative(p)};
    while (chain.back().size() > 1) {
        auto r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    return chain;
}

// Bisection step keeping a sign change (or collapsing onto an exact rational root).
inline void bisect(const CubicPoly& p, Interval& iv) {
    if (iv.lo == iv.hi) return;
    Rational mid = iv.midpoint();
    int sm = sgn(p(mid));
    if (sm == 0) {
        iv.lo = iv.hi = mid;
        return;
    }
    if (sm == sgn(p(iv.lo)))
        iv.lo = mid;
    else
        iv.hi = mid;
}

// Matches x^3 - (n+1)x^2 + nx - 1 for some n >= 6.
inline bool generator_index(const CubicPoly& p, long& n) {
    if (p.c0 != -1 || !p.c1.fits_slong_p()) return false;
    long m = p.c1.get_si();
    if (m < 6 || p.c2 != -(m + 1)) return false;
    n = m;
    return true;
}

}  // namespace detail

/**
 * Isolates the three real roots of p.
 *
 * For q_n the brackets (1/(n-1), 1/(n-2)), (1 - 1/(n-3), 1 - 1/(n-2)), (n, n+1) are used directly. Other cubics go
 * through a Sturm chain and bisection of the Cauchy bound interval.
 */
inline RootIsolation isolate_roots(const CubicPoly& p) {
    if (p.discriminant() <= 0) throw NotTotallyReal("polynomial " + p.to_string() + " does not have three real roots");

    RootIsolation out;
    long n = 0;
    if (detail::generator_index(p, n)) {
        out.roots[0] = {Rational(1, n - 1), Rational(1, n - 2)};
        out.roots[1] = {1 - Rational(1, n - 3), 1 - Rational(1, n - 2)};
        out.roots[2] = {Rational(n), Rational(n + 1)};
        for (auto& iv : out.roots) {
            iv.lo.canonicalize();
            iv.hi.canonicalize();
            if (sgn(p(iv.lo)) * sgn(p(iv.hi)) >= 0) throw Error("root bracket of q_n lost its sign change");
        }
        return out;
    }

    auto chain = detail::sturm_chain(detail::to_qpoly(p));
    Integer bound = 1 + std::max({abs(p.c0), abs(p.c1), abs(p.c2)});
    std::vector<Interval> found;
    std::vector<Interval> work{{Rational(-bound), Rational(bound)}};
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        int count = detail::sign_variations(chain, iv.lo) - detail::sign_variations(chain, iv.hi);
        if (count == 0) continue;
        if (count == 1 && sgn(p(iv.lo)) * sgn(p(iv.hi)) < 0) {
            found.push_back(iv);
            continue;
        }
        Rational mid = iv.midpoint();
        // An exact rational root at the split point would break the Sturm count; shift the split instead.
        for (int k = 3; p(mid) == 0; ++k) mid = iv.lo + (iv.hi - iv.lo) / k;
        work.push_back({iv.lo, mid});
        work.push_back({mid, iv.hi});
    }
    if (found.size() != 3) throw NotTotallyReal("Sturm isolation found " + std::to_string(found.size()) + " roots");
    std::sort(found.begin(), found.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // Neighbours from one split share an endpoint; shrink them apart.
    for (std::size_t i = 0; i + 1 < found.size(); ++i)
        while (!(found[i].hi < found[i + 1].lo)) {
            detail::bisect(p, found[i]);
            detail::bisect(p, found[i + 1]);
        }
    std::copy(found.begin(), found.end(), out.roots.begin());
    return out;
}

/// Bisects one interval of `iso` in place.
inline void refine_root(const CubicPoly& p, RootIsolation& iso, int root_index) {
    detail::bisect(p, iso.roots.at(static_cast<std::size_t>(root_index - 1)));
}

/**
 * Ambient field Q[t]/(q) shared by its elements.
 *
 * Holds the polynomial and the refinable root enclosures. Construction requires q to be irreducible with positive
 * discriminant.
 */
class CubicField {
    struct Private {};

   public:
    CubicField(Private, const CubicPoly& p) : poly_(p), roots_(isolate_roots(p)) {
        for (int i = 1; i <= 3; ++i) refine_to_width(i, Rational(1, Integer(1) << 64));
    }

    static std::shared_ptr<const CubicField> create(const CubicPoly& p) {
        if (!p.irreducible()) throw DomainError("polynomial " + p.to_string() + " is reducible over Q");
        return std::make_shared<const CubicField>(Private{}, p);
    }

    const CubicPoly& poly() const { return poly_; }

    Interval root_enclosure(int root_index) const {
        check_index(root_index);
        std::lock_guard<std::mutex> lock(mutex_);
        return roots_[root_index];
    }

    RootIsolation isolation() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return roots_;
    }

    /// Bisects the enclosure of lambda_root `times` times and returns the new enclosure.
    Interval refine(int root_index, int times = 1) const {
        check_index(root_index);
        std::lock_guard<std::mutex> lock(mutex_);
        for (int k = 0; k < times; ++k) refine_root(poly_, roots_, root_index);
        update_approx(root_index);
        return roots_[root_index];
    }

    void refine_to_width(int root_index, const Rational& width) const {
        check_index(root_index);
        std::lock_guard<std::mutex> lock(mutex_);
        auto& iv = roots_.roots[static_cast<std::size_t>(root_index - 1)];
        for (int k = 0; k < 100000 && iv.width() > width; ++k) refine_root(poly_, roots_, root_index);
        update_approx(root_index);
    }

    DoubleInterval root_double(int root_index) const {
        check_index(root_index);
        std::lock_guard<std::mutex> lock(mutex_);
        return approx_[static_cast<std::size_t>(root_index - 1)];
    }

    long double root_approx(int root_index) const {
        check_index(root_index);
        std::lock_guard<std::mutex> lock(mutex_);
        return ldapprox_[static_cast<std::size_t>(root_index - 1)];
    }

    bool same_as(const CubicField& other) const { return this == &other || poly_ == other.poly_; }

   private:
    static void check_index(int root_index) {
        if (root_index < 1 || root_index > 3) throw DomainError("root index must be 1, 2 or 3");
    }

    void update_approx(int root_index) const {
        const auto& iv = roots_[root_index];
        approx_[static_cast<std::size_t>(root_index - 1)] = detail::enclose(iv);
        Rational mid = iv.midpoint();
        // long double midpoint via a scaled integer to keep 64 bits of mantissa.
        mpz_class scaled = (mid.get_num() << 80) / mid.get_den();
        double hd = scaled.get_d();
        mpz_class rest = scaled - mpz_class(hd);
        ldapprox_[static_cast<std::size_t>(root_index - 1)] =
            std::ldexp(static_cast<long double>(hd) + static_cast<long double>(rest.get_d()), -80);
    }

    CubicPoly poly_;
    mutable std::mutex mutex_;
    mutable RootIsolation roots_;
    mutable std::array<DoubleInterval, 3> approx_{};
    mutable std::array<long double, 3> ldapprox_{};
};

using FieldPtr = std::shared_ptr<const CubicField>;

inline FieldPtr make_field(const CubicPoly& p) { return CubicField::create(p); }

/// Element r0 + r1 t + r2 t^2 of the ambient field; always reduced.
class FieldElement {
   public:
    FieldElement() = default;
    explicit FieldElement(FieldPtr field, Rational r0 = 0, Rational r1 = 0, Rational r2 = 0)
        : field_(std::move(field)), c_{std::move(r0), std::move(r1), std::move(r2)} {
        for (auto& c : c_) c.canonicalize();
    }

    static FieldElement generator(const FieldPtr& field) { return FieldElement(field, 0, 1, 0); }
    static FieldElement constant(const FieldPtr& field, const Rational& q) { return FieldElement(field, q); }

    const FieldPtr& field() const { return field_; }
    const Rational& coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }
    const std::array<Rational, 3>& coeffs() const { return c_; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

    FieldElement operator-() const { return FieldElement(field_, -c_[0], -c_[1], -c_[2]); }

    FieldElement& operator+=(const FieldElement& o) {
        check_same(o);
        for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) {
        check_same(o);
        for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    FieldElement& operator+=(const Rational& q) {
        c_[0] += q;
        return *this;
    }
    FieldElement& operator-=(const Rational& q) {
        c_[0] -= q;
        return *this;
    }
    FieldElement& operator*=(const Rational& q) {
        for (auto& c : c_) c *= q;
        return *this;
    }

    FieldElement& operator*=(const FieldElement& o) {
        check_same(o);
        const CubicPoly& q = field_->poly();
        std::array<Rational, 5> d;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d[i + j] += c_[i] * o.c_[j];
        // t^3 = -c2 t^2 - c1 t - c0
        for (int k = 4; k >= 3; --k) {
            if (d[k] == 0) continue;
            d[k - 1] -= q.c2 * d[k];
            d[k - 2] -= q.c1 * d[k];
            d[k - 3] -= q.c0 * d[k];
        }
        c_ = {d[0], d[1], d[2]};
        return *this;
    }

    /// Inverse by the extended Euclidean algorithm against the ambient polynomial.
    FieldElement inverse() const {
        if (!field_) throw MixedFields("element is not bound to a field");
        if (is_zero()) throw DivisionByZero("inverse of the zero element");
        using detail::QPoly;
        QPoly r0 = detail::to_qpoly(field_->poly());
        QPoly r1{c_[0], c_[1], c_[2]};
        detail::trim(r1);
        QPoly s0{}, s1{Rational(1)};  // coefficients of `this` in the Bezout relation
        while (r1.size() > 1) {
            auto [quot, rem] = detail::divmod(r0, r1);
            QPoly s2 = detail::sub(s0, detail::mul(quot, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant because q is irreducible.
        if (r1.empty()) throw DivisionByZero("element shares a factor with the ambient polynomial");
        Rational k = r1[0];
        std::array<Rational, 3> out{};
        for (std::size_t i = 0; i < s1.size() && i < 3; ++i) out[i] = s1[i] / k;
        FieldElement e(field_, out[0], out[1], out[2]);
        return e;
    }

    FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator+(FieldElement a, const Rational& q) { return a += q; }
    friend FieldElement operator-(FieldElement a, const Rational& q) { return a -= q; }
    friend FieldElement operator+(const Rational& q, FieldElement a) { return a += q; }
    friend FieldElement operator-(const Rational& q, const FieldElement& a) { return (-a) += q; }
    friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
    friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return a.c_ == b.c_;
    }

    bool compatible(const FieldElement& o) const {
        return field_ && o.field_ && (field_ == o.field_ || field_->same_as(*o.field_));
    }

    /// Rational enclosure of the value at the given root, from the current root enclosure.
    Interval enclosure(int root_index) const {
        Interval t = field_->root_enclosure(root_index);
        return evaluate(t);
    }

    Interval evaluate(const Interval& t) const {
        // Horner: r0 + t (r1 + r2 t)
        Interval inner = c_[2] * t;
        inner.lo += c_[1];
        inner.hi += c_[1];
        Interval v = inner * t;
        v.lo += c_[0];
        v.hi += c_[0];
        return v;
    }

    DoubleInterval evaluate(const DoubleInterval& t) const {
        DoubleInterval inner = detail::add(detail::mul(detail::enclose(c_[2]), t), detail::enclose(c_[1]));
        return detail::add(detail::mul(inner, t), detail::enclose(c_[0]));
    }

    /// Nearest long double approximation of the value at a root (not a certified enclosure).
    long double approx(int root_index) const {
        long double t = field_->root_approx(root_index);
        return to_ld(c_[0]) + t * (to_ld(c_[1]) + t * to_ld(c_[2]));
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(" << c_[0].get_str() << ") + (" << c_[1].get_str() << ")t + (" << c_[2].get_str() << ")t^2";
        return os.str();
    }

    static long double to_ld(const Rational& q) {
        const auto& num = q.get_num();
        const auto& den = q.get_den();
        if (num.fits_slong_p() && den.fits_slong_p())
            return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
        return static_cast<long double>(q.get_d());
    }

   private:
    void check_same(const FieldElement& o) const {
        if (!compatible(o)) throw MixedFields("field elements belong to different fields");
    }

    FieldPtr field_;
    std::array<Rational, 3> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.to_string(); }

inline constexpr int kRefinementBudget = 10000;

/**
 * Exact sign of e(lambda_root).
 *
 * Returns 0 iff e is the zero element; otherwise refines the root enclosure by bisection until the evaluated interval
 * excludes zero. Throws RefinementBudgetExceeded after kRefinementBudget bisections.
 */
inline int sign_at(const FieldElement& e, int root_index) {
    if (e.is_zero()) return 0;
    const FieldPtr& f = e.field();
    if (!f) throw MixedFields("element is not bound to a field");
    if (e.is_rational()) return sgn(e.coeff(0));

    DoubleInterval fast = e.evaluate(f->root_double(root_index));
    if (fast.lo > 0) return 1;
    if (fast.hi < 0) return -1;

    Interval t = f->root_enclosure(root_index);
    for (int spent = 0; spent <= kRefinementBudget; spent += 8) {
        Interval v = e.evaluate(t);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        t = f->refine(root_index, 8);
    }
    throw RefinementBudgetExceeded("sign_at: refinement budget exhausted for " + e.to_string());
}

/// sign(a(lambda_root) - b(lambda_root)).
inline int compare_at(const FieldElement& a, const FieldElement& b, int root_index) {
    if (a == b) return 0;
    return sign_at(a - b, root_index);
}

/// A field element read through one real embedding, with a refinable rational enclosure of its value.
class EmbeddedValue {
   public:
    EmbeddedValue(FieldElement e, int root_index) : element_(std::move(e)), root_(root_index) {
        if (root_ < 1 || root_ > 3) throw DomainError("root index must be 1, 2 or 3");
        enclosure_ = element_.enclosure(root_);
    }

    const FieldElement& element() const { return element_; }
    int root() const { return root_; }
    const Interval& enclosure() const { return enclosure_; }
    int sign() const { return sign_at(element_, root_); }
    long double approx() const { return element_.approx(root_); }

    /// Refines until the enclosure of the value is at most `width` wide.
    const Interval& refine(const Rational& width) {
        enclosure_ = element_.enclosure(root_);
        for (int k = 0; enclosure_.width() > width; ++k) {
            if (k > kRefinementBudget) throw RefinementBudgetExceeded("EmbeddedValue::refine");
            element_.field()->refine(root_, 4);
            enclosure_ = element_.enclosure(root_);
        }
        return enclosure_;
    }

   private:
    FieldElement element_;
    int root_;
    Interval enclosure_;
};

/// Decimal rendering of q, rounded half away from zero to `digits` places.
inline std::string to_decimal(const Rational& q, int digits) {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational s = abs(q) * scale + Rational(1, 2);
    Integer whole = s.get_num() / s.get_den();
    std::string body = whole.get_str();
    if (digits > 0) {
        if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    bool negative = q < 0 && whole != 0;
    return negative ? "-" + body : body;
}

/// Shortest decimal with at least `min_digits` places that lies inside the interval.
inline std::string decimal_inside(const Interval& iv, int min_digits) {
    Integer scale = 1;
    for (int i = 0; i < min_digits; ++i) scale *= 10;
    for (int digits = min_digits; digits < min_digits + 200; ++digits, scale *= 10) {
        Rational lo = iv.lo * scale;
        Integer c = lo.get_num() / lo.get_den();  // truncation toward zero
        if (Rational(c) < lo) c += 1;
        Rational candidate(c, scale);
        candidate.canonicalize();
        if (candidate <= iv.hi) return to_decimal(candidate, digits);
    }
    return to_decimal(iv.midpoint(), min_digits + 200);
}

/// Decimal annotation of e at a root with `digits` places; within 10^-digits of the true value.
inline std::string decimal_at(const FieldElement& e, int root_index, int digits = 12) {
    EmbeddedValue v(e, root_index);
    Integer scale = 1;
    for (int i = 0; i < digits + 2; ++i) scale *= 10;
    v.refine(Rational(1, scale));
    return to_decimal(v.enclosure().midpoint(), digits);
}

/// Parses "p/q" or "p" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '/' && !slash && i > start && i + 1 < s.size()) {
            slash = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw ParseError("malformed rational '" + s + "'");
    }
    if (start == s.size()) throw ParseError("malformed rational '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace rexmap

#endif
