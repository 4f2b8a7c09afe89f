#pragma once

#include <array>
#include <string>
#include <vector>

#include "chisynth/matrix.hpp"

namespace chisynth {

/**
 * Rank-3 O_pi-lattice in F^3, stored as a canonical basis matrix: the
 * column-style Hermite form over the valuation ring. The canonical basis is
 * lower-triangular with diagonal chi^{a_i} and each below-diagonal entry in
 * row i reduced modulo chi^{a_i} via the chi-adic digit representatives.
 * Two Lattice values are equal iff their canonical bases are identical.
 */
class Lattice {
    Matrix3 basis_;
    std::array<long, 3> diag_exp_;

    Lattice(Matrix3 b, std::array<long, 3> e) : basis_(std::move(b)), diag_exp_(e) {}

    static Lattice canonicalize(std::vector<Vector3> cols) {
        std::array<Vector3, 3> basis;
        for (int r = 0; r < 3; ++r) {
            int best = -1;
            Valuation bestv = Valuation::infinity();
            for (std::size_t j = 0; j < cols.size(); ++j) {
                Valuation v = v_pi(cols[j][r]);
                if (v < bestv) {
                    bestv = v;
                    best = static_cast<int>(j);
                }
            }
            if (best < 0 || bestv.is_infinite()) throw Singular();
            Vector3 piv = cols[static_cast<std::size_t>(best)];
            cols.erase(cols.begin() + best);
            FieldElement u = chi_pow(bestv.value()) / piv[r];
            for (int i = 0; i < 3; ++i) piv[i] = piv[i] * u;
            for (auto& c : cols) {
                if (c[r].is_zero()) continue;
                FieldElement m = c[r] / piv[r];
                for (int i = 0; i < 3; ++i) c[i] -= m * piv[i];
            }
            basis[r] = piv;
        }
        for (const auto& c : cols)
            for (const auto& e : c)
                if (!e.is_zero()) throw Error("lattice generators exceed rank 3");

        std::array<long, 3> a{};
        for (int r = 0; r < 3; ++r) a[r] = v_pi(basis[r][r]).value();
        // reduce below-diagonal entries modulo chi^{a_i} of their row
        for (int c = 0; c < 3; ++c)
            for (int i = c + 1; i < 3; ++i) {
                FieldElement t = truncate_chi_digits_below(basis[c][i], a[i]);
                FieldElement q = (basis[c][i] - t) / basis[i][i];
                for (int r = 0; r < 3; ++r) basis[c][r] -= q * basis[i][r];
            }
        return Lattice(Matrix3::from_columns(basis[0], basis[1], basis[2]), a);
    }

public:
    /// The standard lattice O_pi^3.
    static Lattice standard() { return Lattice(Matrix3::identity(), {0, 0, 0}); }

    static Lattice from_basis(const Matrix3& g) {
        return canonicalize({g.column(0), g.column(1), g.column(2)});
    }

    static Lattice from_generators(const std::vector<Vector3>& gens) {
        return canonicalize(gens);
    }

    const Matrix3& basis() const { return basis_; }
    const std::array<long, 3>& diag_exponents() const { return diag_exp_; }
    long det_valuation() const { return diag_exp_[0] + diag_exp_[1] + diag_exp_[2]; }

    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

    /// chi^k-scaled lattice; scaling commutes with the canonical form.
    Lattice scaled(long k) const {
        if (k == 0) return *this;
        Matrix3 b = basis_ * chi_pow(k);
        return Lattice(b, {diag_exp_[0] + k, diag_exp_[1] + k, diag_exp_[2] + k});
    }

    /// Dual lattice: basis (B^*)^{-1}, canonicalized.
    Lattice dual() const { return from_basis(basis_.conj_transpose().inverse()); }

    /// Gram matrix [<v_i, v_j>] of the canonical basis columns.
    Matrix3 gram() const { return gram_of_columns(basis_); }

    /// other is a sublattice of this; forward substitution on the triangular basis.
    bool contains(const Lattice& other) const {
        for (int j = 0; j < 3; ++j) {
            std::array<FieldElement, 3> x;
            for (int i = 0; i < 3; ++i) {
                FieldElement rhs = other.basis_.at(i, j);
                for (int t = 0; t < i; ++t) rhs -= basis_.at(i, t) * x[t];
                x[i] = rhs * chi_pow(-diag_exp_[i]);
                if (v_pi(x[i]) < Valuation(0)) return false;
            }
        }
        return true;
    }

    /// Canonical serialization; doubles as the vertex-store key.
    std::string key() const { return matrix_key(basis_); }

    static Lattice from_key(std::string_view s) { return from_basis(parse_matrix_key(s)); }
};

/// Gram test: all entries integral and the determinant a unit.
inline bool is_self_dual(const Lattice& l) {
    Matrix3 g = l.gram();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (v_pi(g.at(i, j)) < Valuation(0)) return false;
    return v_pi(g.determinant()) == Valuation(0);
}

/**
 * For a lattice pi-equivalent to its dual (dual = chi^i L), the exponent i is
 * even and chi^{i/2} L is self-dual; returns that lattice.
 */
inline Lattice self_dualize(const Lattice& l) {
    Lattice d = l.dual();
    long diff = d.det_valuation() - l.det_valuation();
    if (diff % 3 != 0) throw NotPiEquivalentToDual();
    long i = diff / 3;
    if (!(d == l.scaled(i))) throw NotPiEquivalentToDual();
    if (i % 2 != 0) throw OddExponent();
    return l.scaled(i / 2);
}

}  // namespace chisynth
