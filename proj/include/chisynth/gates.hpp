#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chisynth/cartan.hpp"
#include "chisynth/matrix.hpp"

namespace chisynth {

enum class Gate : std::uint8_t { H, S, R };

using GateWord = std::vector<Gate>;

inline char gate_char(Gate g) {
    switch (g) {
        case Gate::H: return 'H';
        case Gate::S: return 'S';
        default: return 'R';
    }
}

inline Gate gate_from_char(char c) {
    switch (c) {
        case 'H': return Gate::H;
        case 'S': return Gate::S;
        case 'R': return Gate::R;
        default: throw ParseError(std::string("unknown gate '") + c + "'");
    }
}

inline std::string word_string(const GateWord& w) {
    std::string s;
    s.reserve(w.size());
    for (Gate g : w) s += gate_char(g);
    return s;
}

inline GateWord parse_word(std::string_view s) {
    GateWord w;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        w.push_back(gate_from_char(c));
    }
    return w;
}

namespace detail {

inline Matrix3 make_h() {
    // i/sqrt(3) = -w^2/chi = (1+2w)/3
    FieldElement s{Rational(1, 3), Rational(2, 3)};
    FieldElement w = FieldElement::omega();
    FieldElement w2 = FieldElement::omega2();
    Matrix3 v{1, 1, 1, 1, w, w2, 1, w2, w};
    return v * s;
}

}  // namespace detail

inline const Matrix3& gate_matrix(Gate g) {
    static const Matrix3 h = detail::make_h();
    static const Matrix3 s = Matrix3::diagonal(1, FieldElement::omega(), 1);
    static const Matrix3 r = Matrix3::diagonal(1, 1, -FieldElement(1));
    switch (g) {
        case Gate::H: return h;
        case Gate::S: return s;
        default: return r;
    }
}

/// The cyclic shift |i> -> |i+1 mod 3>; monomial, used by the D-gate identity.
inline const Matrix3& x_matrix() {
    static const Matrix3 x{0, 0, 1, 1, 0, 0, 0, 1, 0};
    return x;
}

/// Left-to-right product of the word's gate matrices; empty word is I.
inline Matrix3 eval_word(const GateWord& w) {
    Matrix3 m = Matrix3::identity();
    for (Gate g : w) m = m * gate_matrix(g);
    return m;
}

/// The six units of Z[w] in the fixed order +1, -1, +w, -w, +w^2, -w^2.
inline const std::array<FieldElement, 6>& unit_table() {
    static const std::array<FieldElement, 6> units = {
        FieldElement(1),         -FieldElement(1),         FieldElement::omega(),
        -FieldElement::omega(),  FieldElement::omega2(),   -FieldElement::omega2()};
    return units;
}

/// Unit code of +-w^k: code = 2k + (1 if negative).
inline int unit_mul_code(int u, int v) {
    int k = ((u >> 1) + (v >> 1)) % 3;
    int s = (u & 1) ^ (v & 1);
    return 2 * k + s;
}

/// Applies the unit with the given code to x.
inline FieldElement unit_apply(int code, const FieldElement& x) {
    FieldElement y = x;
    switch (code >> 1) {
        case 0: break;
        case 1: y = FieldElement(-x.b(), x.a() - x.b()); break;           // x * w
        default: y = FieldElement(x.b() - x.a(), -x.a()); break;          // x * w^2
    }
    return (code & 1) ? -y : y;
}

/**
 * MonomialMatrix: permutation times diagonal unit phases; the elements of
 * U_3(O_F). Column j has its only nonzero, the unit phase[j], in row perm[j].
 */
struct Monomial {
    std::array<std::uint8_t, 3> perm{0, 1, 2};
    std::array<std::uint8_t, 3> phase{0, 0, 0};  // unit codes

    bool operator==(const Monomial&) const = default;

    static const std::array<std::array<std::uint8_t, 3>, 6>& permutations() {
        static const std::array<std::array<std::uint8_t, 3>, 6> perms = {
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        return perms;
    }

    int index() const {
        const auto& perms = permutations();
        int p = 0;
        while (perms[p] != perm) ++p;
        return ((p * 6 + phase[0]) * 6 + phase[1]) * 6 + phase[2];
    }

    static Monomial from_index(int idx) {
        Monomial m;
        m.phase[2] = static_cast<std::uint8_t>(idx % 6);
        idx /= 6;
        m.phase[1] = static_cast<std::uint8_t>(idx % 6);
        idx /= 6;
        m.phase[0] = static_cast<std::uint8_t>(idx % 6);
        m.perm = permutations()[idx / 6];
        return m;
    }

    Matrix3 to_matrix() const {
        Matrix3 m;
        for (int j = 0; j < 3; ++j) m.at(perm[j], j) = unit_table()[phase[j]];
        return m;
    }

    static std::optional<Monomial> from_matrix(const Matrix3& m) {
        Monomial r;
        for (int j = 0; j < 3; ++j) {
            int row = -1;
            int code = -1;
            for (int i = 0; i < 3; ++i) {
                const FieldElement& e = m.at(i, j);
                if (e.is_zero()) continue;
                if (row >= 0) return std::nullopt;
                for (int u = 0; u < 6; ++u)
                    if (e == unit_table()[u]) {
                        code = u;
                        break;
                    }
                if (code < 0) return std::nullopt;
                row = i;
            }
            if (row < 0) return std::nullopt;
            r.perm[j] = static_cast<std::uint8_t>(row);
            r.phase[j] = static_cast<std::uint8_t>(code);
        }
        // must be a permutation
        if (r.perm[0] == r.perm[1] || r.perm[0] == r.perm[2] || r.perm[1] == r.perm[2])
            return std::nullopt;
        return r;
    }
};

/// All 1296 monomials in index order.
inline std::vector<Monomial> enumerate_monomials() {
    std::vector<Monomial> out;
    out.reserve(1296);
    for (int i = 0; i < 1296; ++i) out.push_back(Monomial::from_index(i));
    return out;
}

namespace detail {

// Compact fixed-precision form of a unitary with small sde: each entry is
// z/chi^k with z = a+bw, normalized so chi does not divide z. Coefficients
// stay tiny inside the search ball (|z|^2 <= 3^k), so plain machine integers
// suffice and the word-table search avoids bignum arithmetic entirely.
struct CompactEntry {
    std::int32_t a = 0, b = 0;
    std::int32_t k = 0;

    void normalize() {
        if (a == 0 && b == 0) {
            k = 0;
            return;
        }
        while (k > 0 && (((a + b) % 3) + 3) % 3 == 0) {
            std::int32_t na = (2 * a - b) / 3;
            std::int32_t nb = (a + b) / 3;
            a = na;
            b = nb;
            --k;
        }
    }
};

struct CompactUnitary {
    std::array<CompactEntry, 9> e{};

    CompactEntry& at(int r, int c) { return e[static_cast<std::size_t>(r) * 3 + c]; }
    const CompactEntry& at(int r, int c) const { return e[static_cast<std::size_t>(r) * 3 + c]; }

    static CompactUnitary from_matrix(const Matrix3& m) {
        CompactUnitary u;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                RingEntry re = to_ring_entry(m.at(i, j));
                long a = re.z.a().get_si(), b = re.z.b().get_si();
                if (a < -1000 || a > 1000 || b < -1000 || b > 1000)
                    throw Error("CompactUnitary: entry out of range");
                u.at(i, j) = {static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                              static_cast<std::int32_t>(re.k)};
            }
        return u;
    }

    Matrix3 to_matrix() const {
        Matrix3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const CompactEntry& ce = at(i, j);
                m.at(i, j) = FieldElement(EisensteinInteger(Integer(ce.a), Integer(ce.b))) *
                             chi_pow(-ce.k);
            }
        return m;
    }

    CompactUnitary operator*(const CompactUnitary& o) const {
        CompactUnitary r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // accumulate the three products over a common chi-power
                std::int64_t acc_a = 0, acc_b = 0;
                std::int32_t acc_k = 0;
                for (int t = 0; t < 3; ++t) {
                    const CompactEntry& x = at(i, t);
                    const CompactEntry& y = o.at(t, j);
                    std::int64_t pa = static_cast<std::int64_t>(x.a) * y.a -
                                      static_cast<std::int64_t>(x.b) * y.b;
                    std::int64_t pb = static_cast<std::int64_t>(x.a) * y.b +
                                      static_cast<std::int64_t>(x.b) * y.a -
                                      static_cast<std::int64_t>(x.b) * y.b;
                    std::int32_t pk = x.k + y.k;
                    while (acc_k < pk) {  // z * chi = (a+b) + (2b-a) w
                        std::int64_t na = acc_a + acc_b, nb = 2 * acc_b - acc_a;
                        acc_a = na;
                        acc_b = nb;
                        ++acc_k;
                    }
                    while (pk < acc_k) {
                        std::int64_t na = pa + pb, nb = 2 * pb - pa;
                        pa = na;
                        pb = nb;
                        ++pk;
                    }
                    acc_a += pa;
                    acc_b += pb;
                }
                CompactEntry ce{static_cast<std::int32_t>(acc_a), static_cast<std::int32_t>(acc_b),
                                acc_k};
                ce.normalize();
                r.at(i, j) = ce;
            }
        return r;
    }

    /// l = 2 * max chi-denominator exponent (entries are normalized).
    long l_value() const {
        std::int32_t worst = 0;
        for (const CompactEntry& ce : e) worst = std::max(worst, ce.k);
        return 2L * worst;
    }

    std::string key() const {
        std::string s;
        s.reserve(27);
        for (const CompactEntry& ce : e) {
            s += static_cast<char>(ce.a);
            s += static_cast<char>(ce.b);
            s += static_cast<char>(ce.k);
        }
        return s;
    }
};

}  // namespace detail

/**
 * Word table for the 1296 monomials: breadth-first search over exact unitaries
 * from I with generators {H, S, R}, pruning states with l above a bound.
 * First discovery wins, so each word is shortest and lexicographically least
 * in the order H < S < R.
 */
class MonomialTable {
    std::vector<GateWord> words_;  // indexed by Monomial::index

    explicit MonomialTable(std::vector<GateWord> w) : words_(std::move(w)) {}

public:
    static MonomialTable build(long initial_bound = 4, long max_bound = 8) {
        for (long bound = initial_bound; bound <= max_bound; bound += 2) {
            auto words = try_build(bound);
            if (words) return MonomialTable(std::move(*words));
        }
        throw CoverageIncomplete("monomial word table incomplete at every bound");
    }

    /// Shared instance (the table is deterministic).
    static const MonomialTable& instance() {
        static const MonomialTable table = build();
        return table;
    }

    const GateWord& word_for(const Monomial& m) const { return words_[m.index()]; }
    const GateWord& word_for(int index) const { return words_[index]; }

private:
    static std::optional<std::vector<GateWord>> try_build(long bound) {
        struct State {
            detail::CompactUnitary m;
            int parent;
            Gate via;
        };
        const std::array<detail::CompactUnitary, 3> gens = {
            detail::CompactUnitary::from_matrix(gate_matrix(Gate::H)),
            detail::CompactUnitary::from_matrix(gate_matrix(Gate::S)),
            detail::CompactUnitary::from_matrix(gate_matrix(Gate::R))};

        std::vector<State> states;
        std::unordered_map<std::string, int> seen;
        std::vector<GateWord> words(1296);
        std::vector<bool> have(1296, false);
        int found = 0;

        auto word_of = [&](int idx) {
            GateWord w;
            while (idx > 0) {
                w.push_back(states[static_cast<std::size_t>(idx)].via);
                idx = states[static_cast<std::size_t>(idx)].parent;
            }
            std::reverse(w.begin(), w.end());
            return w;
        };

        states.push_back({detail::CompactUnitary::from_matrix(Matrix3::identity()), -1, Gate::H});
        seen.emplace(states[0].m.key(), 0);
        have[Monomial{}.index()] = true;
        ++found;

        for (std::size_t head = 0; head < states.size() && found < 1296; ++head) {
            detail::CompactUnitary cur = states[head].m;  // copy: states may reallocate
            for (Gate g : {Gate::H, Gate::S, Gate::R}) {
                detail::CompactUnitary next = cur * gens[static_cast<int>(g)];
                if (next.l_value() > bound) continue;
                std::string key = next.key();
                if (seen.contains(key)) continue;
                int id = static_cast<int>(states.size());
                seen.emplace(std::move(key), id);
                states.push_back({next, static_cast<int>(head), g});
                if (next.l_value() == 0) {
                    auto mono = Monomial::from_matrix(next.to_matrix());
                    if (!mono) throw Error("word table: l = 0 state is not monomial");
                    int idx = mono->index();
                    if (!have[idx]) {
                        have[idx] = true;
                        words[idx] = word_of(id);
                        ++found;
                    }
                }
                if (found == 1296) break;
            }
        }
        if (found < 1296) return std::nullopt;
        return words;
    }
};

}  // namespace chisynth
