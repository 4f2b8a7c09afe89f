#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chisynth/building.hpp"
#include "chisynth/cartan.hpp"
#include "chisynth/gates.hpp"

namespace chisynth {

/// Smallest denominator exponent: max over entries of -v_pi, floored at 0.
inline long sde(const Matrix3& u) {
    if (u.determinant().is_zero()) throw Singular();
    long worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Valuation v = v_pi(u.at(i, j));
            if (!v.is_infinite() && -v.value() > worst) worst = -v.value();
        }
    return worst;
}

struct SynthesisResult {
    GateWord word;
    long steps = 0;
    long initial_l = 0;
    std::array<long, 3> gate_counts{0, 0, 0};  // H, S, R
    std::vector<long> decrements;              // per-step drop of l
};

/// Exact equality check of a word against a target matrix.
inline bool verify(const GateWord& w, const Matrix3& u) { return eval_word(w) == u; }

/// Deterministic seeded word over {H,S,R} and its exact evaluation.
inline std::pair<GateWord, Matrix3> random_unitary(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GateWord w;
    w.reserve(length);
    for (std::size_t i = 0; i < length; ++i) w.push_back(static_cast<Gate>(rng() % 3));
    return {w, eval_word(w)};
}

namespace detail {

// Descent candidates c = H^e Q for e in {1,3} and Q monomial, in that order.
// The unit-code matrix of V_e Q lets l(c U) be tested with additions only:
// c = s_e (V_e Q) with v(s_e) = -1 and V_e Q made of units.
struct CandidateSet {
    struct Candidate {
        std::array<std::array<int, 3>, 3> codes;  // unit codes of V_e Q
        Matrix3 matrix;                           // H^e Q exactly
        GateWord inverse_word;                    // word of Q^-1 H^(4-e)
    };
    std::vector<Candidate> all;

    static const CandidateSet& instance() {
        static const CandidateSet set = build();
        return set;
    }

private:
    static CandidateSet build() {
        const MonomialTable& table = MonomialTable::instance();
        const Matrix3& h = gate_matrix(Gate::H);
        Matrix3 h3 = h * h * h;
        auto monomials = enumerate_monomials();

        std::vector<int> inverse_index(1296);
        for (int i = 0; i < 1296; ++i) {
            auto inv = Monomial::from_matrix(monomials[static_cast<std::size_t>(i)].to_matrix().inverse());
            inverse_index[static_cast<std::size_t>(i)] = inv->index();
        }

        CandidateSet set;
        set.all.reserve(2592);
        for (int e : {1, 3}) {
            // V[i][j] = w^{ij}; conj for e = 3
            std::array<std::array<int, 3>, 3> v_codes{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    int k = (i * j) % 3;
                    if (e == 3) k = (3 - k) % 3;
                    v_codes[i][j] = 2 * k;
                }
            const Matrix3& he = (e == 1) ? h : h3;
            for (int qi = 0; qi < 1296; ++qi) {
                const Monomial& q = monomials[static_cast<std::size_t>(qi)];
                Candidate c;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        c.codes[i][j] = unit_mul_code(v_codes[i][q.perm[j]], q.phase[j]);
                c.matrix = he * q.to_matrix();
                c.inverse_word = table.word_for(inverse_index[static_cast<std::size_t>(qi)]);
                for (int t = 0; t < 4 - e; ++t) c.inverse_word.push_back(Gate::H);
                set.all.push_back(std::move(c));
            }
        }
        return set;
    }
};

// true iff every entry of (V_e Q) U has valuation >= bound
inline bool candidate_within(const CandidateSet::Candidate& c, const Matrix3& u, long bound) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElement y = unit_apply(c.codes[i][0], u.at(0, j));
            y += unit_apply(c.codes[i][1], u.at(1, j));
            y += unit_apply(c.codes[i][2], u.at(2, j));
            if (v_pi(y) < Valuation(bound)) return false;
        }
    return true;
}

}  // namespace detail

/**
 * Exact synthesis by descent on the building: while l(U) > 0, the first
 * candidate c = H^e Q (e in {1,3}, Q monomial, enumeration order) with
 * l(c U) < l(U) is applied; the drop is always exactly 2 since l is even and
 * l(c U) >= l(U) - l(c^-1) = l(U) - 2. At l = 0 the remainder is a monomial
 * and its table word finishes the circuit. The result evaluates to U exactly,
 * global phase included.
 */
inline SynthesisResult exact_synthesize(const Matrix3& u) {
    if (!is_unitary(u)) throw NotUnitary();
    if (!in_ring(u)) throw NotInRing("matrix entries are not in Z[chi^-1]");

    const auto& candidates = detail::CandidateSet::instance().all;
    const MonomialTable& table = MonomialTable::instance();

    SynthesisResult result;
    result.initial_l = l_value(u);

    Matrix3 cur = u;
    long l_cur = result.initial_l;
    std::vector<const GateWord*> prefix_words;
    while (l_cur > 0) {
        // a candidate achieving l - 2 must make every entry of (V_e Q) U
        // have valuation >= -(l-2)/2 + 1
        long bound = -(l_cur - 2) / 2 + 1;
        const detail::CandidateSet::Candidate* hit = nullptr;
        for (const auto& c : candidates)
            if (detail::candidate_within(c, cur, bound)) {
                hit = &c;
                break;
            }
        if (!hit)
            throw DescentStuck("no candidate decreases l for " + matrix_key(cur));
        cur = hit->matrix * cur;
        long l_next = l_value(cur);
        if (l_next >= l_cur) throw DescentStuck("candidate failed to decrease l");
        result.decrements.push_back(l_cur - l_next);
        l_cur = l_next;
        prefix_words.push_back(&hit->inverse_word);
        ++result.steps;
    }

    auto mono = Monomial::from_matrix(cur);
    if (!mono) throw Error("exact_synthesize: l = 0 remainder is not monomial");
    for (const GateWord* w : prefix_words)
        result.word.insert(result.word.end(), w->begin(), w->end());
    const GateWord& tail = table.word_for(*mono);
    result.word.insert(result.word.end(), tail.begin(), tail.end());

    if (!verify(result.word, u)) throw Error("exact_synthesize: verification failed");
    for (Gate g : result.word) ++result.gate_counts[static_cast<int>(g)];
    return result;
}

/// Orbit and stabilizer of a pure vertex under the 1296 monomials.
struct OrbitReport {
    std::size_t orbit_size = 0;
    std::size_t stabilizer_order = 0;
    std::size_t product = 0;
};

inline OrbitReport orbit_stabilizer_of_vertex(const Matrix3& base) {
    BuildingVertex v = BuildingVertex::pure(Lattice::from_basis(base));
    std::set<std::string> orbit;
    std::size_t stab = 0;
    for (const Monomial& q : enumerate_monomials()) {
        BuildingVertex moved = BuildingVertex::pure(Lattice::from_basis(q.to_matrix() * base));
        orbit.insert(moved.key());
        if (moved.key() == v.key()) ++stab;
    }
    OrbitReport r;
    r.orbit_size = orbit.size();
    r.stabilizer_order = stab;
    r.product = r.orbit_size * r.stabilizer_order;
    return r;
}

/// The orbit of the H vertex under the monomial group, a finite check of the descent.
inline OrbitReport orbit_stabilizer_of_H_vertex() {
    return orbit_stabilizer_of_vertex(gate_matrix(Gate::H));
}

}  // namespace chisynth
