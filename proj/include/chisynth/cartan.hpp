#pragma once

#include <array>
#include <utility>

#include "chisynth/matrix.hpp"

namespace chisynth {

/// l(g) = -2 * min entry valuation; finite for invertible g.
inline long l_value(const Matrix3& g) {
    if (g.determinant().is_zero()) throw Singular();
    Valuation best = Valuation::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Valuation v = v_pi(g.at(i, j));
            if (v < best) best = v;
        }
    return -2 * best.value();
}

/// Membership in A = { g : g* g in GL_3(O_pi) }, i.e. the lattice g O^3 is self-dual.
inline bool is_in_A(const Matrix3& g) {
    if (g.determinant().is_zero()) throw Singular();
    Matrix3 gs = g.conj_transpose() * g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (v_pi(gs.at(i, j)) < Valuation(0)) return false;
    return v_pi(gs.determinant()) == Valuation(0);
}

/// The metric (l(g^-1 h) + l(h^-1 g)) / 2 on A / GL_3(O_pi).
inline long tilde_d(const Matrix3& g, const Matrix3& h) {
    if (!is_in_A(g) || !is_in_A(h)) throw NotInA();
    Matrix3 gh = g.inverse() * h;
    Matrix3 hg = h.inverse() * g;
    return (l_value(gh) + l_value(hg)) / 2;
}

/// g = k * diag(chi^lambda) * k' with k, k' valuation-integral of unit determinant
/// and lambda sorted descending (then unique).
struct CartanTriple {
    Matrix3 k;
    std::array<long, 3> lambda;
    Matrix3 kp;

    Matrix3 diagonal() const {
        return Matrix3::diagonal(chi_pow(lambda[0]), chi_pow(lambda[1]), chi_pow(lambda[2]));
    }
};

/**
 * Cartan decomposition by valuation-pivot elimination: pick a minimal-valuation
 * entry (ties by smallest (row, col)), move it to the corner, clear its row and
 * column with integral multipliers, recurse, then sort the exponents.
 */
inline CartanTriple cartan_decompose(const Matrix3& g) {
    if (g.determinant().is_zero()) throw Singular();
    Matrix3 a = g;
    Matrix3 left = Matrix3::identity();
    Matrix3 right = Matrix3::identity();
    // invariant: g = left * a * right
    auto swap_rows = [&](int r1, int r2) {
        if (r1 == r2) return;
        for (int c = 0; c < 3; ++c) std::swap(a.at(r1, c), a.at(r2, c));
        for (int r = 0; r < 3; ++r) std::swap(left.at(r, r1), left.at(r, r2));
    };
    auto swap_cols = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int r = 0; r < 3; ++r) std::swap(a.at(r, c1), a.at(r, c2));
        for (int c = 0; c < 3; ++c) std::swap(right.at(c1, c), right.at(c2, c));
    };

    std::array<long, 3> lam{};
    for (int step = 0; step < 3; ++step) {
        int pi = -1, pj = -1;
        Valuation best = Valuation::infinity();
        for (int i = step; i < 3; ++i)
            for (int j = step; j < 3; ++j) {
                Valuation v = v_pi(a.at(i, j));
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best.is_infinite()) throw Singular();
        swap_rows(step, pi);
        swap_cols(step, pj);
        long e = best.value();
        lam[step] = e;
        // unit-normalize the pivot to exactly chi^e
        FieldElement u = a.at(step, step) / chi_pow(e);  // a unit of O_pi
        for (int c = step; c < 3; ++c) a.at(step, c) = a.at(step, c) / u;
        for (int r = 0; r < 3; ++r) left.at(r, step) = left.at(r, step) * u;
        const FieldElement piv = a.at(step, step);
        for (int r = step + 1; r < 3; ++r) {
            if (a.at(r, step).is_zero()) continue;
            FieldElement m = a.at(r, step) / piv;
            for (int c = step; c < 3; ++c) a.at(r, c) -= m * a.at(step, c);
            for (int c = 0; c < 3; ++c) left.at(c, step) += m * left.at(c, r);
        }
        for (int c = step + 1; c < 3; ++c) {
            if (a.at(step, c).is_zero()) continue;
            FieldElement m = a.at(step, c) / piv;
            for (int r = step; r < 3; ++r) a.at(r, c) -= m * a.at(r, step);
            for (int r = 0; r < 3; ++r) right.at(step, r) += m * right.at(c, r);
        }
    }
    // exponents came out ascending; reverse to the descending convention
    Matrix3 rev;
    rev.at(0, 2) = rev.at(1, 1) = rev.at(2, 0) = FieldElement(1);
    CartanTriple t;
    t.k = left * rev;
    t.kp = rev * right;
    t.lambda = {lam[2], lam[1], lam[0]};
    return t;
}

}  // namespace chisynth
