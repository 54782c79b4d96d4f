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
 * @file pisot.hpp
 * @brief Generator matrices M_n, words over them, characteristic polynomials and eigendata.
 *
 * A word is written as a comma separated list "n_L,...,n_2,n_1" and denotes W = M_{n_L} ... M_{n_2} M_{n_1}, i.e. the
 * list is multiplied left to right exactly as written, and the rightmost letter acts first. The k-th prefix is
 * W_k = M_{n_k} ... M_{n_1}.
 */

#ifndef REXMAP_PISOT_HPP
#define REXMAP_PISOT_HPP

#include <array>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"

namespace rexmap {

/// 3x3 integer matrix, 0-based storage.
class MatrixZ3 {
   public:
    MatrixZ3() = default;
    MatrixZ3(std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t i = 0;
        for (const auto& r : rows) {
            std::size_t j = 0;
            for (long v : r) a_.at(i).at(j++) = v;
            ++i;
        }
    }

    static MatrixZ3 identity() { return MatrixZ3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

    Integer& operator()(int i, int j) { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Integer& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    friend MatrixZ3 operator*(const MatrixZ3& x, const MatrixZ3& y) {
        MatrixZ3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Integer s = 0;
                for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
                r(i, j) = s;
            }
        return r;
    }

    friend bool operator==(const MatrixZ3& x, const MatrixZ3& y) { return x.a_ == y.a_; }

    MatrixZ3 transpose() const {
        MatrixZ3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Integer trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

    /// Determinant of the 2x2 submatrix left after deleting row i and column j (0-based).
    Integer minor(int i, int j) const {
        int r[2], c[2];
        for (int k = 0, t = 0; k < 3; ++k)
            if (k != i) r[t++] = k;
        for (int k = 0, t = 0; k < 3; ++k)
            if (k != j) c[t++] = k;
        return (*this)(r[0], c[0]) * (*this)(r[1], c[1]) - (*this)(r[0], c[1]) * (*this)(r[1], c[0]);
    }

    Integer det() const {
        return (*this)(0, 0) * minor(0, 0) - (*this)(0, 1) * minor(0, 1) + (*this)(0, 2) * minor(0, 2);
    }

    /// Sum of the three principal 2x2 minors.
    Integer principal_minor_sum() const { return minor(0, 0) + minor(1, 1) + minor(2, 2); }

    /// Exact inverse of a unimodular matrix (adjugate divided by +-1).
    MatrixZ3 inverse() const {
        Integer d = det();
        if (d != 1 && d != -1) throw DomainError("matrix is not unimodular");
        MatrixZ3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Integer cof = minor(j, i);
                if ((i + j) % 2) cof = -cof;
                r(i, j) = cof * d;
            }
        return r;
    }

    bool strictly_positive() const {
        for (const auto& row : a_)
            for (const auto& v : row)
                if (v <= 0) return false;
        return true;
    }

    bool nonnegative() const {
        for (const auto& row : a_)
            for (const auto& v : row)
                if (v < 0) return false;
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < 3; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < 3; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
        }
        os << "]";
        return os.str();
    }

   private:
    std::array<std::array<Integer, 3>, 3> a_{};
};

inline std::ostream& operator<<(std::ostream& os, const MatrixZ3& m) { return os << m.to_string(); }

inline constexpr long kLetterMax = 1000000;

/// M_n with rows (0,1,0), (0,0,1), (1,-n,n+1).
inline MatrixZ3 generator_matrix(long n) {
    if (n < 6) throw DomainError("generator index must be >= 6, got " + std::to_string(n));
    if (n > kLetterMax) throw DomainError("generator index exceeds " + std::to_string(kLetterMax));
    return MatrixZ3{{0, 1, 0}, {0, 0, 1}, {1, -n, n + 1}};
}

/// Monoid element; `written` keeps the display order n_L, ..., n_1.
class Word {
   public:
    Word() = default;
    explicit Word(std::vector<long> written) : written_(std::move(written)) {
        if (written_.empty()) throw DomainError("empty word");
        for (long n : written_) generator_matrix(n);
    }

    std::size_t length() const { return written_.size(); }
    const std::vector<long>& written() const { return written_; }

    /// n_k for k = 1..L.
    long letter(std::size_t k) const {
        if (k < 1 || k > written_.size()) throw DomainError("letter index out of range");
        return written_[written_.size() - k];
    }

    /// The word of the prefix W_k = M_{n_k} ... M_{n_1}.
    Word prefix(std::size_t k) const {
        if (k < 1 || k > written_.size()) throw DomainError("prefix index out of range");
        return Word(std::vector<long>(written_.end() - static_cast<std::ptrdiff_t>(k), written_.end()));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < written_.size(); ++i) s += (i ? "," : "") + std::to_string(written_[i]);
        return s;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.written_ == b.written_; }

   private:
    std::vector<long> written_;
};

/// Parses "n_L,...,n_1". Malformed text raises ParseError, letters below 6 raise DomainError.
inline Word parse_word(std::string_view text) {
    std::vector<long> letters;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
        if (tok.empty() || tok.size() > 12) throw ParseError("malformed word '" + std::string(text) + "'");
        long v = 0;
        std::size_t start = (tok.front() == '-' || tok.front() == '+') ? 1 : 0;
        if (start == tok.size()) throw ParseError("malformed word '" + std::string(text) + "'");
        for (std::size_t i = start; i < tok.size(); ++i) {
            if (tok[i] < '0' || tok[i] > '9') throw ParseError("malformed word '" + std::string(text) + "'");
            v = v * 10 + (tok[i] - '0');
        }
        letters.push_back(tok.front() == '-' ? -v : v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return Word(std::move(letters));
}

/// W = M_{n_L} ... M_{n_1}.
inline MatrixZ3 word_matrix(const Word& w) {
    MatrixZ3 r = MatrixZ3::identity();
    for (long n : w.written()) r = r * generator_matrix(n);
    return r;
}

/// W_k = M_{n_k} ... M_{n_1}; W_0 is the identity.
inline MatrixZ3 prefix_matrix(const Word& w, std::size_t k) {
    if (k == 0) return MatrixZ3::identity();
    return word_matrix(w.prefix(k));
}

/// x^3 - Tr(M) x^2 + b(M) x - 1.
inline CubicPoly char_poly(const MatrixZ3& m) {
    if (m.det() != 1) throw DomainError("characteristic polynomial requested for a matrix with det != 1");
    return CubicPoly{Integer(-1), m.principal_minor_sum(), Integer(-m.trace())};
}

struct PisotReport {
    bool verdict = false;
    CubicPoly poly;
    RootIsolation roots;
    std::vector<std::string> notes;
};

/// Certifies 0 < lambda_1 < lambda_2 < 1 < lambda_3 for the word matrix.
inline PisotReport check_pisot(const Word& w) {
    PisotReport rep;
    rep.poly = char_poly(word_matrix(w));
    auto fault = [&](const std::string& why) {
        rep.verdict = false;
        rep.notes.push_back(why);
        rep.notes.push_back("implementation fault: every monoid element is expected to be Pisot");
        return rep;
    };
    if (rep.poly.discriminant() <= 0) return fault("eigenvalues are not real and distinct");
    if (!rep.poly.irreducible()) return fault("characteristic polynomial is reducible");
    auto field = make_field(rep.poly);
    rep.roots = field->isolation();
    FieldElement t = FieldElement::generator(field);
    Rational one(1);
    if (sign_at(t, 1) <= 0) return fault("lambda_1 <= 0");
    if (sign_at(t - one, 2) >= 0) return fault("lambda_2 >= 1");
    if (sign_at(t - one, 3) <= 0) return fault("lambda_3 <= 1");
    rep.verdict = true;
    return rep;
}

/// Eigendata of a word: xi = (1, x, x') over K = Q[t]/(q_W); read at root 1 it is xi_1, at root 2 it is xi_2.
struct EigenData {
    Word word;
    MatrixZ3 matrix;
    CubicPoly poly;
    FieldPtr field;
    std::array<FieldElement, 3> xi;

    EmbeddedValue x() const { return EmbeddedValue(xi[1], 1); }
    EmbeddedValue xp() const { return EmbeddedValue(xi[2], 1); }
    EmbeddedValue y() const { return EmbeddedValue(xi[1], 2); }
    EmbeddedValue yp() const { return EmbeddedValue(xi[2], 2); }

    FieldElement lambda() const { return FieldElement::generator(field); }
};

/// Matrix times a vector of field elements.
inline std::array<FieldElement, 3> apply_matrix(const MatrixZ3& m, const std::array<FieldElement, 3>& v) {
    std::array<FieldElement, 3> r;
    for (int i = 0; i < 3; ++i) {
        FieldElement s(v[0].field());
        for (int j = 0; j < 3; ++j) s += v[static_cast<std::size_t>(j)] * Rational(m(i, j));
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

/// Kernel vector of a rank-2 matrix over K, normalized to leading coordinate 1.
inline std::array<FieldElement, 3> kernel_vector(std::array<std::array<FieldElement, 3>, 3> a) {
    int pivot_col[3] = {-1, -1, -1};
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int p = -1;
        for (int r = row; r < 3; ++r)
            if (!a[r][col].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[row], a[p]);
        FieldElement inv = a[row][col].inverse();
        for (int c = 0; c < 3; ++c) a[row][c] *= inv;
        for (int r = 0; r < 3; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            FieldElement f = a[r][col];
            for (int c = 0; c < 3; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col[row++] = col;
    }
    if (row != 2) throw DegenerateEigenvector("eigenspace does not have dimension one (rank " + std::to_string(row) + ")");
    int free_col = 3 - pivot_col[0] - pivot_col[1];
    const FieldPtr& f = a[0][0].field();
    std::array<FieldElement, 3> v{FieldElement(f), FieldElement(f), FieldElement(f)};
    v[static_cast<std::size_t>(free_col)] = FieldElement(f, 1);
    for (int r = 0; r < 2; ++r) v[static_cast<std::size_t>(pivot_col[r])] = -a[r][free_col];
    if (v[0].is_zero()) throw DegenerateEigenvector("eigenvector has vanishing first coordinate");
    FieldElement inv = v[0].inverse();
    for (auto& e : v) e *= inv;
    return v;
}

/// Eigendata of W; single generators give (1, t, t^2) directly.
inline EigenData eigenvectors(const Word& w) {
    EigenData e;
    e.word = w;
    e.matrix = word_matrix(w);
    e.poly = char_poly(e.matrix);
    e.field = make_field(e.poly);
    FieldElement t = FieldElement::generator(e.field);
    if (w.length() == 1) {
        e.xi = {FieldElement(e.field, 1), t, t * t};
        return e;
    }
    std::array<std::array<FieldElement, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElement v(e.field, Rational(e.matrix(i, j)));
            if (i == j) v -= t;
            a[i][j] = v;
        }
    e.xi = kernel_vector(a);
    return e;
}

/// W xi == t xi coordinatewise in K.
inline bool eigen_relation_holds(const EigenData& e) {
    auto lhs = apply_matrix(e.matrix, e.xi);
    FieldElement t = e.lambda();
    for (std::size_t i = 0; i < 3; ++i)
        if (!(lhs[i] == t * e.xi[i])) return false;
    return true;
}

/// Order of the values of a at root ra and b at root rb; the values must differ.
inline int compare_across_roots(const FieldElement& a, int ra, const FieldElement& b, int rb) {
    EmbeddedValue va(a, ra), vb(b, rb);
    Rational width(1, 1 << 20);
    for (int k = 0; k <= kRefinementBudget; ++k, width /= 4) {
        const Interval& ia = va.refine(width);
        const Interval& ib = vb.refine(width);
        if (ia.hi < ib.lo) return -1;
        if (ib.hi < ia.lo) return 1;
    }
    throw RefinementBudgetExceeded("compare_across_roots: values not separated");
}

/// Both words give the same (x, x', y, y'): b's matrix maps a's eigenvector to mu times itself, with mu read at
/// roots 1, 2, 3 being b's eigenvalues in increasing order.
inline bool same_eigenvectors(const EigenData& a, const EigenData& b) {
    auto u = apply_matrix(b.matrix, a.xi);
    const FieldElement& mu = u[0];
    for (std::size_t i = 1; i < 3; ++i)
        if (!(u[i] == mu * a.xi[i])) return false;
    Rational one(1);
    if (sign_at(mu - one, 3) <= 0 || sign_at(mu - one, 1) >= 0 || sign_at(mu - one, 2) >= 0) return false;
    return compare_across_roots(mu, 1, mu, 2) < 0;
}

struct MinorCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct MinorReport {
    MatrixZ3 p;
    MatrixZ3 p_inverse;
    std::vector<MinorCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline const MatrixZ3& basis_s() {
    static const MatrixZ3 s{{1, 0, 0}, {0, 1, 0}, {0, 1, 1}};
    return s;
}

inline const MatrixZ3& basis_a() {
    static const MatrixZ3 a{{0, 2, 1}, {0, 1, 0}, {1, 0, 0}};
    return a;
}

/**
 * Integer inequalities on P = S^-1 W S: b(P) < Tr(P), [P]_{1,1} <= P_{3,3}, the sign pattern of P^-1 (entries (1,2),
 * (2,2), (3,1), (3,3) nonpositive, the rest nonnegative) and |P^-1_{1j}| > 3 |P^-1_{2j}|, |P^-1_{1j}| > 3 |P^-1_{3j}|.
 */
inline MinorReport monoid_minor_checks(const Word& w) {
    MinorReport rep;
    const MatrixZ3& s = basis_s();
    rep.p = s.inverse() * word_matrix(w) * s;
    rep.p_inverse = rep.p.inverse();
    const MatrixZ3& p = rep.p;
    const MatrixZ3& pi = rep.p_inverse;

    Integer b = p.principal_minor_sum(), tr = p.trace();
    rep.checks.push_back({"b(P) < Tr(P)", b < tr, b.get_str() + " vs " + tr.get_str()});
    Integer m11 = p.minor(0, 0);
    rep.checks.push_back({"[P]_11 <= P_33", m11 <= p(2, 2), m11.get_str() + " vs " + p(2, 2).get_str()});

    static constexpr bool nonpositive[3][3] = {{false, true, false}, {false, true, false}, {true, false, true}};
    bool pattern = true;
    std::string bad;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            bool ok = nonpositive[i][j] ? pi(i, j) <= 0 : pi(i, j) >= 0;
            if (!ok) {
                pattern = false;
                bad += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") ";
            }
        }
    rep.checks.push_back({"sign pattern of P^-1", pattern, pattern ? pi.to_string() : bad});

    for (int r = 1; r < 3; ++r) {
        bool ok = true;
        std::string detail;
        for (int j = 0; j < 3; ++j) {
            Integer a1 = abs(pi(0, j)), ar = abs(pi(r, j));
            if (!(a1 > 3 * ar)) {
                ok = false;
                detail += "column " + std::to_string(j + 1) + ": " + a1.get_str() + " vs 3*" + ar.get_str() + " ";
            }
        }
        rep.checks.push_back({"a_1j > 3 a_" + std::to_string(r + 1) + "j", ok, detail});
    }
    return rep;
}

struct Conjugations {
    MatrixZ3 p;
    MatrixZ3 q;
    MatrixZ3 p_cubed;
    MatrixZ3 q_cubed;
    bool p_primitive = false;
    bool q_primitive = false;
};

/// P_n = S^-1 M_n S and Q_n = A^-1 M_n^-1 A, with primitivity witnessed by positive cubes.
inline Conjugations conjugations(long n) {
    MatrixZ3 m = generator_matrix(n);
    Conjugations c;
    c.p = basis_s().inverse() * m * basis_s();
    c.q = basis_a().inverse() * m.inverse() * basis_a();
    c.p_cubed = c.p * c.p * c.p;
    c.q_cubed = c.q * c.q * c.q;
    c.p_primitive = c.p.nonnegative() && c.p_cubed.strictly_positive();
    c.q_primitive = c.q.nonnegative() && c.q_cubed.strictly_positive();
    return c;
}

}  // namespace rexmap

#endif
