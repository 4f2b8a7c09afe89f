#pragma once

#include <array>
#include <initializer_list>
#include <string>
#include <string_view>

#include "chisynth/cyclotomic.hpp"
#include "chisynth/errors.hpp"

namespace chisynth {

using Vector3 = std::array<FieldElement, 3>;

/// Hermitian inner product <x,y> = sum_i x_i * conj(y_i).
inline FieldElement hermitian_inner(const Vector3& x, const Vector3& y) {
    FieldElement s{0};
    for (int i = 0; i < 3; ++i) s += x[i] * y[i].conj();
    return s;
}

/// Exact 3x3 matrix over Q(w), row-major storage.
class Matrix3 {
    std::array<FieldElement, 9> e_;

public:
    Matrix3() : e_{} {}
    Matrix3(std::initializer_list<FieldElement> entries) {
        if (entries.size() != 9) throw Error("Matrix3: need 9 entries");
        std::copy(entries.begin(), entries.end(), e_.begin());
    }

    static Matrix3 identity() {
        Matrix3 m;
        m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = FieldElement(1);
        return m;
    }

    static Matrix3 diagonal(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
        Matrix3 m;
        m.at(0, 0) = a;
        m.at(1, 1) = b;
        m.at(2, 2) = c;
        return m;
    }

    static Matrix3 from_columns(const Vector3& c0, const Vector3& c1, const Vector3& c2) {
        Matrix3 m;
        for (int i = 0; i < 3; ++i) {
            m.at(i, 0) = c0[i];
            m.at(i, 1) = c1[i];
            m.at(i, 2) = c2[i];
        }
        return m;
    }

    FieldElement& at(int r, int c) { return e_[static_cast<std::size_t>(r) * 3 + c]; }
    const FieldElement& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * 3 + c]; }

    Vector3 column(int c) const { return {at(0, c), at(1, c), at(2, c)}; }
    Vector3 row(int r) const { return {at(r, 0), at(r, 1), at(r, 2)}; }

    bool operator==(const Matrix3&) const = default;

    Matrix3 operator+(const Matrix3& o) const {
        Matrix3 r;
        for (int i = 0; i < 9; ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    Matrix3 operator-(const Matrix3& o) const {
        Matrix3 r;
        for (int i = 0; i < 9; ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    Matrix3 operator-() const {
        Matrix3 r;
        for (int i = 0; i < 9; ++i) r.e_[i] = -e_[i];
        return r;
    }

    Matrix3 operator*(const Matrix3& o) const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                FieldElement s = at(i, 0) * o.at(0, j);
                s += at(i, 1) * o.at(1, j);
                s += at(i, 2) * o.at(2, j);
                r.at(i, j) = s;
            }
        return r;
    }

    Matrix3 operator*(const FieldElement& s) const {
        Matrix3 r;
        for (int i = 0; i < 9; ++i) r.e_[i] = e_[i] * s;
        return r;
    }

    Vector3 operator*(const Vector3& v) const {
        Vector3 r;
        for (int i = 0; i < 3; ++i) r[i] = at(i, 0) * v[0] + at(i, 1) * v[1] + at(i, 2) * v[2];
        return r;
    }

    Matrix3 transpose() const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
        return r;
    }

    Matrix3 conj_transpose() const {
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i).conj();
        return r;
    }

    FieldElement determinant() const {
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }

    Matrix3 inverse() const {
        FieldElement d = determinant();
        if (d.is_zero()) throw Singular();
        FieldElement dinv = d.inv();
        Matrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
                int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
                r.at(i, j) = (at(i1, j1) * at(i2, j2) - at(i1, j2) * at(i2, j1)) * dinv;
            }
        return r;
    }
};

inline Matrix3 operator*(const FieldElement& s, const Matrix3& m) { return m * s; }

/// Exact unitarity test: M * M^* = I.
inline bool is_unitary(const Matrix3& m) {
    return m * m.conj_transpose() == Matrix3::identity();
}

/// Gram matrix of the columns v_i of a basis: [<v_i, v_j>]_{ij}.
inline Matrix3 gram_of_columns(const Matrix3& b) {
    Matrix3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.at(i, j) = hermitian_inner(b.column(i), b.column(j));
    return g;
}

/// Element of Z[chi^-1] in the normal form z / chi^k with k >= 0 minimal.
struct RingEntry {
    EisensteinInteger z;
    long k = 0;
};

/// Normal form of a ring element; throws NotInRing on other denominators.
inline RingEntry to_ring_entry(const FieldElement& x) {
    if (x.is_zero()) return {EisensteinInteger{}, 0};
    Integer da = x.a().get_den();
    Integer db = x.b().get_den();
    Integer den;
    mpz_lcm(den.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    long m = v3(den);
    Integer three_m;
    mpz_ui_pow_ui(three_m.get_mpz_t(), 3, static_cast<unsigned long>(m));
    if (den != three_m)
        throw NotInRing("entry " + to_string(x) + " has a denominator prime to chi");
    EisensteinInteger z{Integer(x.a() * den), Integer(x.b() * den)};
    // 1/3 = -w / chi^2, so z/3^m = z*(-w)^m / chi^(2m)
    for (long i = 0; i < m; ++i) {
        z = z * EisensteinInteger::omega();
        z = -z;
    }
    long k = 2 * m;
    while (k > 0 && z.divisible_by_chi()) {
        z = z.div_chi();
        --k;
    }
    return {z, k};
}

inline bool in_ring(const FieldElement& x) {
    if (x.is_zero()) return true;
    Integer da = x.a().get_den();
    Integer db = x.b().get_den();
    Integer den;
    mpz_lcm(den.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    Integer three_m;
    mpz_ui_pow_ui(three_m.get_mpz_t(), 3, static_cast<unsigned long>(v3(den)));
    return den == three_m;
}

inline bool in_ring(const Matrix3& m) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!in_ring(m.at(i, j))) return false;
    return true;
}

/// Wire form "(<p>+<q>w)" or "(<p>+<q>w)/chi^<k>" of a Z[chi^-1] element.
inline std::string ring_entry_string(const FieldElement& x) {
    RingEntry e = to_ring_entry(x);
    std::string s = "(" + e.z.to_string() + ")";
    if (e.k > 0) s += "/chi^" + std::to_string(e.k);
    return s;
}

inline FieldElement parse_ring_entry(std::string_view s) {
    detail::skip_ws(s);
    if (s.empty() || s.front() != '(') throw ParseError("expected '(' in entry");
    s.remove_prefix(1);
    Rational p = detail::parse_rational_prefix(s);
    if (p.get_den() != 1) throw ParseError("entry numerator must be an integer");
    detail::skip_ws(s);
    if (s.empty() || (s.front() != '+' && s.front() != '-')) throw ParseError("expected sign in entry");
    bool neg = s.front() == '-';
    s.remove_prefix(1);
    Rational q = detail::parse_rational_prefix(s);
    if (q.get_den() != 1) throw ParseError("entry numerator must be an integer");
    if (neg) q = -q;
    detail::skip_ws(s);
    if (s.size() < 2 || s[0] != 'w' || s[1] != ')') throw ParseError("expected 'w)' in entry");
    s.remove_prefix(2);
    long k = 0;
    detail::skip_ws(s);
    if (!s.empty()) {
        constexpr std::string_view tag = "/chi^";
        if (s.substr(0, tag.size()) != tag) throw ParseError("expected '/chi^' in entry");
        s.remove_prefix(tag.size());
        Rational kr = detail::parse_rational_prefix(s);
        if (kr.get_den() != 1 || kr < 0) throw ParseError("chi exponent must be a nonnegative integer");
        k = static_cast<long>(kr.get_num().get_si());
        detail::skip_ws(s);
        if (!s.empty()) throw ParseError("trailing characters in entry");
    }
    return FieldElement(p, q) * chi_pow(-k);
}

/// Canonical row-major serialization; entries in the wire grammar.
inline std::string matrix_key(const Matrix3& m) {
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if (i) s += ";";
        for (int j = 0; j < 3; ++j) {
            if (j) s += ",";
            s += ring_entry_string(m.at(i, j));
        }
    }
    return s;
}

inline Matrix3 parse_matrix_key(std::string_view s) {
    Matrix3 m;
    int i = 0;
    std::size_t pos = 0;
    std::string str(s);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            std::size_t end = str.find_first_of(",;", pos);
            std::string tok = str.substr(pos, end == std::string::npos ? end : end - pos);
            m.at(r, c) = parse_ring_entry(tok);
            pos = (end == std::string::npos) ? str.size() : end + 1;
            ++i;
        }
    }
    if (pos < str.size()) throw ParseError("trailing characters in matrix key");
    if (i != 9) throw ParseError("matrix key needs 9 entries");
    return m;
}

}  // namespace chisynth
