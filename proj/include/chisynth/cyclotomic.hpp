#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "chisynth/errors.hpp"

namespace chisynth {

using Integer = mpz_class;
using Rational = mpq_class;

/// 3-adic valuation of a nonzero integer.
inline long v3(const Integer& n) {
    static const Integer three = 3;
    Integer cofactor;
    return static_cast<long>(mpz_remove(cofactor.get_mpz_t(), n.get_mpz_t(), three.get_mpz_t()));
}

/// 3-adic valuation of a nonzero rational.
inline long v3(const Rational& q) {
    return v3(q.get_num()) - v3(q.get_den());
}

/**
 * EisensteinInteger: a + b*w with integer a, b, where w is the primitive
 * third root of unity (w^2 + w + 1 = 0).
 */
class EisensteinInteger {
    Integer a_, b_;

public:
    EisensteinInteger() : a_(0), b_(0) {}
    EisensteinInteger(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {}
    explicit EisensteinInteger(long a) : a_(a), b_(0) {}

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }

    static EisensteinInteger omega() { return {0, 1}; }
    static EisensteinInteger chi() { return {1, -1}; }  // chi = 1 - w

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    EisensteinInteger operator+(const EisensteinInteger& o) const {
        return {a_ + o.a_, b_ + o.b_};
    }
    EisensteinInteger operator-(const EisensteinInteger& o) const {
        return {a_ - o.a_, b_ - o.b_};
    }
    EisensteinInteger operator-() const { return {-a_, -b_}; }

    // (a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 + (a1 b2 + a2 b1 - b1 b2) w
    EisensteinInteger operator*(const EisensteinInteger& o) const {
        Integer bb = b_ * o.b_;
        return {a_ * o.a_ - bb, a_ * o.b_ + b_ * o.a_ - bb};
    }

    bool operator==(const EisensteinInteger& o) const = default;

    // w -> w^2 = -1 - w, so conj(a + b w) = (a - b) - b w.
    EisensteinInteger conj() const { return {a_ - b_, -b_}; }

    // norm(a + b w) = a^2 - a b + b^2, nonnegative, zero only at zero.
    Integer norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    bool is_unit() const { return norm() == 1; }

    // Residue in F_3 = Z[w]/chi, using w = 1 (mod chi).
    int residue_mod_chi() const {
        return static_cast<int>(mpz_fdiv_ui(Integer(a_ + b_).get_mpz_t(), 3));
    }

    bool divisible_by_chi() const { return residue_mod_chi() == 0; }

    // Exact division by chi: z/chi = z*(2+w)/3.
    EisensteinInteger div_chi() const {
        Integer na = 2 * a_ - b_;
        Integer nb = a_ + b_;
        if (mpz_fdiv_ui(na.get_mpz_t(), 3) != 0 || mpz_fdiv_ui(nb.get_mpz_t(), 3) != 0)
            throw Error("div_chi: element not divisible by chi");
        return {na / 3, nb / 3};
    }

    std::string to_string() const {
        std::string s = a_.get_str();
        s += (b_ >= 0) ? "+" : "-";
        s += Integer(abs(b_)).get_str();
        s += "w";
        return s;
    }
};

/**
 * FieldElement: a + b*w with exact rational a, b; an element of Q(w).
 * Rationals are kept reduced with positive denominator (mpq canonical form).
 */
class FieldElement {
    Rational a_, b_;

    static Rational canon(Rational q) {
        q.canonicalize();
        return q;
    }

public:
    FieldElement() : a_(0), b_(0) {}
    FieldElement(Rational a, Rational b) : a_(canon(std::move(a))), b_(canon(std::move(b))) {}
    FieldElement(long v) : a_(v), b_(0) {}  // NOLINT: implicit by design
    explicit FieldElement(Rational a) : a_(canon(std::move(a))), b_(0) {}
    FieldElement(const EisensteinInteger& z) : a_(z.a()), b_(z.b()) {}  // NOLINT

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    static FieldElement omega() { return {Rational(0), Rational(1)}; }
    static FieldElement omega2() { return {Rational(-1), Rational(-1)}; }
    static FieldElement chi() { return {Rational(1), Rational(-1)}; }
    static FieldElement chi_inv() { return {Rational(2, 3), Rational(1, 3)}; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    FieldElement operator+(const FieldElement& o) const { return {a_ + o.a_, b_ + o.b_}; }
    FieldElement operator-(const FieldElement& o) const { return {a_ - o.a_, b_ - o.b_}; }
    FieldElement operator-() const { return {-a_, -b_}; }

    FieldElement operator*(const FieldElement& o) const {
        Rational bb = b_ * o.b_;
        return {a_ * o.a_ - bb, a_ * o.b_ + b_ * o.a_ - bb};
    }

    FieldElement& operator+=(const FieldElement& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    bool operator==(const FieldElement& o) const = default;

    FieldElement conj() const { return {a_ - b_, -b_}; }

    // norm(x) = x * conj(x) = a^2 - a b + b^2 in Q.
    Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    FieldElement inv() const {
        if (is_zero()) throw DivisionByZero();
        Rational n = norm();
        FieldElement c = conj();
        return {c.a_ / n, c.b_ / n};
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }
};

/**
 * Valuation: value of the pi-adic valuation v_pi, either a finite integer or
 * a distinguished infinity (the valuation of 0) that compares greater than
 * every finite value.
 */
class Valuation {
    bool infinite_;
    long value_;

    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}

public:
    Valuation(long v) : infinite_(false), value_(v) {}  // NOLINT: implicit by design
    static Valuation infinity() { return {true, 0}; }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw Error("Valuation: infinite valuation has no finite value");
        return value_;
    }

    bool operator==(const Valuation& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    bool operator<(const Valuation& o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return value_ < o.value_;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }

    Valuation operator+(const Valuation& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return {value_ + o.value_};
    }

    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
        if (v.infinite_) return os << "inf";
        return os << v.value_;
    }
};

namespace detail {

// machine-integer path for small operands; components bounded by 2^30 keep
// the norm within __int128
inline bool small_long(const Rational& q, long& num, long& den) {
    if (!mpz_fits_slong_p(q.get_num().get_mpz_t()) || !mpz_fits_slong_p(q.get_den().get_mpz_t()))
        return false;
    num = mpz_get_si(q.get_num().get_mpz_t());
    den = mpz_get_si(q.get_den().get_mpz_t());
    constexpr long bound = 1L << 30;
    return num > -bound && num < bound && den < bound;
}

inline long v3_i128(__int128 n) {
    long v = 0;
    while (n % 3 == 0) {
        n /= 3;
        ++v;
    }
    return v;
}

}  // namespace detail

/**
 * The pi-adic valuation v_pi on Q(w), normalized by v_pi(chi) = 1, v_pi(3) = 2.
 *
 * Computed as the 3-adic valuation of norm(x): v_pi is Galois-invariant, so
 * v_pi(norm x) = 2 v_pi(x), while v3(q) = v_pi(q)/2 on rationals.
 */
inline Valuation v_pi(const FieldElement& x) {
    if (x.is_zero()) return Valuation::infinity();
    long an, ad, bn, bd;
    if (detail::small_long(x.a(), an, ad) && detail::small_long(x.b(), bn, bd)) {
        __int128 a = static_cast<__int128>(an) * bd;
        __int128 b = static_cast<__int128>(bn) * ad;
        __int128 n = a * a - a * b + b * b;
        long dv = 0;
        while (ad % 3 == 0) ad /= 3, ++dv;
        while (bd % 3 == 0) bd /= 3, ++dv;
        return Valuation(detail::v3_i128(n) - 2 * dv);
    }
    return Valuation(v3(x.norm()));
}

inline Valuation v_pi(const EisensteinInteger& z) {
    if (z.is_zero()) return Valuation::infinity();
    return Valuation(v3(z.norm()));
}

namespace detail {

// Residue of a rational with denominator coprime to 3; 2 is its own inverse mod 3.
inline int residue_mod3(const Rational& q) {
    int num = static_cast<int>(mpz_fdiv_ui(q.get_num().get_mpz_t(), 3));
    int den = static_cast<int>(mpz_fdiv_ui(q.get_den().get_mpz_t(), 3));
    if (den == 0) throw NegativeValuation("residue: denominator divisible by 3");
    return (den == 1) ? num : (num * 2) % 3;
}

}  // namespace detail

/// x mod chi in F_3 = {0,1,2}, using w = 1 (mod chi). Requires v_pi(x) >= 0.
inline int residue_mod_chi(const FieldElement& x) {
    if (x.is_zero()) return 0;
    if (v_pi(x) < Valuation(0))
        throw NegativeValuation("residue_mod_chi: negative valuation");
    return (detail::residue_mod3(x.a()) + detail::residue_mod3(x.b())) % 3;
}

/// chi^k as an exact FieldElement, any sign of k; small powers are cached.
inline FieldElement chi_pow(long k) {
    static const std::array<FieldElement, 25> cache = [] {
        std::array<FieldElement, 25> c;
        c[12] = FieldElement(1);
        for (int i = 1; i <= 12; ++i) {
            c[12 + i] = c[12 + i - 1] * FieldElement::chi();
            c[12 - i] = c[12 - i + 1] * FieldElement::chi_inv();
        }
        return c;
    }();
    if (k >= -12 && k <= 12) return cache[static_cast<std::size_t>(k + 12)];
    FieldElement base = (k >= 0) ? FieldElement::chi() : FieldElement::chi_inv();
    unsigned long e = (k >= 0) ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
    FieldElement r{1};
    FieldElement p = base;
    while (e > 0) {
        if (e & 1) r *= p;
        p *= p;
        e >>= 1;
    }
    return r;
}

/**
 * First k digits of the chi-adic expansion x = x_0 + x_1 chi + x_2 chi^2 + ...
 * with digits in {0,1,2}. Greedy: each digit is the residue of the current
 * remainder, which is then shifted down by one power of chi.
 */
inline std::vector<int> chi_digits(const FieldElement& x, std::size_t k) {
    if (!x.is_zero() && v_pi(x) < Valuation(0))
        throw NegativeValuation("chi_digits: negative valuation");
    std::vector<int> digits;
    digits.reserve(k);
    FieldElement r = x;
    for (std::size_t i = 0; i < k; ++i) {
        int d = residue_mod_chi(r);
        digits.push_back(d);
        r = (r - FieldElement(d)) * FieldElement::chi_inv();
    }
    return digits;
}

/**
 * Sum of the chi-adic digits of x at indices below k; digits in {0,1,2}.
 * Handles negative starting valuations by factoring out chi^v first, so it
 * serves as "x mod chi^k" with the canonical digit representatives.
 */
inline FieldElement truncate_chi_digits_below(const FieldElement& x, long k) {
    if (x.is_zero()) return FieldElement(0);
    long v = v_pi(x).value();
    if (v >= k) return FieldElement(0);
    FieldElement y = x * chi_pow(-v);
    FieldElement out{0};
    for (long i = v; i < k; ++i) {
        int d = residue_mod_chi(y);
        if (d != 0) out += FieldElement(d) * chi_pow(i);
        y = (y - FieldElement(d)) * FieldElement::chi_inv();
    }
    return out;
}

namespace detail {

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

// Parses a decimal rational "p", "-p", "p/q" off the front of s.
inline Rational parse_rational_prefix(std::string_view& s) {
    skip_ws(s);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits_start) throw ParseError("expected a number in '" + std::string(s) + "'");
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t den_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_start) throw ParseError("expected a denominator in '" + std::string(s) + "'");
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), std::string(s.substr(0, i)).c_str(), 10) != 0)
        throw ParseError("bad rational '" + std::string(s.substr(0, i)) + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator");
    q.canonicalize();
    s.remove_prefix(i);
    return q;
}

}  // namespace detail

/// Canonical string form "(<a>+<b>w)" with a, b as reduced rationals.
inline std::string to_string(const FieldElement& x) {
    std::string s = "(";
    s += detail::rational_str(x.a());
    if (x.b() >= 0) {
        s += "+";
        s += detail::rational_str(x.b());
    } else {
        s += "-";
        s += detail::rational_str(Rational(-x.b()));
    }
    s += "w)";
    return s;
}

/**
 * Parses "(<a>+<b>w)" and the shorthands "w", "w^2", plain rationals, with
 * optional sign. Round-trips exactly with to_string.
 */
inline FieldElement parse_field_element(std::string_view s) {
    detail::skip_ws(s);
    bool negate = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negate = s.front() == '-';
        s.remove_prefix(1);
        detail::skip_ws(s);
    }
    FieldElement result;
    if (!s.empty() && s.front() == '(') {
        s.remove_prefix(1);
        Rational a = detail::parse_rational_prefix(s);
        detail::skip_ws(s);
        if (s.empty() || (s.front() != '+' && s.front() != '-'))
            throw ParseError("expected '+' or '-' in field element");
        bool bneg = s.front() == '-';
        s.remove_prefix(1);
        Rational b = detail::parse_rational_prefix(s);
        if (bneg) b = -b;
        detail::skip_ws(s);
        if (s.size() < 2 || s[0] != 'w' || s[1] != ')')
            throw ParseError("expected 'w)' in field element");
        s.remove_prefix(2);
        result = FieldElement{a, b};
    } else if (!s.empty() && s.front() == 'w') {
        s.remove_prefix(1);
        if (s.size() >= 2 && s[0] == '^' && s[1] == '2') {
            s.remove_prefix(2);
            result = FieldElement::omega2();
        } else {
            result = FieldElement::omega();
        }
    } else {
        result = FieldElement{detail::parse_rational_prefix(s)};
    }
    detail::skip_ws(s);
    if (!s.empty()) throw ParseError("trailing characters '" + std::string(s) + "'");
    return negate ? -result : result;
}

}  // namespace chisynth
