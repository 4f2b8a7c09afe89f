#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "chisynth/errors.hpp"

namespace chisynth {

/// Linear algebra over F_3 in dimension 3, small enough to brute force.
using F3 = std::uint8_t;

struct F3Vec {
    std::array<F3, 3> c{0, 0, 0};

    bool operator==(const F3Vec&) const = default;
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
};

inline F3 f3_neg(F3 x) { return static_cast<F3>((3 - x) % 3); }

inline F3Vec operator+(const F3Vec& x, const F3Vec& y) {
    return {{static_cast<F3>((x.c[0] + y.c[0]) % 3), static_cast<F3>((x.c[1] + y.c[1]) % 3),
             static_cast<F3>((x.c[2] + y.c[2]) % 3)}};
}

inline F3Vec operator*(F3 s, const F3Vec& x) {
    return {{static_cast<F3>(s * x.c[0] % 3), static_cast<F3>(s * x.c[1] % 3),
             static_cast<F3>(s * x.c[2] % 3)}};
}

/// Standard inner product on F_3^3.
inline F3 f3_dot(const F3Vec& x, const F3Vec& y) {
    return static_cast<F3>((x.c[0] * y.c[0] + x.c[1] * y.c[1] + x.c[2] * y.c[2]) % 3);
}

struct F3Mat {
    std::array<std::array<F3, 3>, 3> m{};

    bool operator==(const F3Mat&) const = default;

    static F3Mat identity() {
        F3Mat a;
        a.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        return a;
    }

    bool is_symmetric() const {
        return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1];
    }
};

inline F3Vec operator*(const F3Mat& a, const F3Vec& x) {
    F3Vec r;
    for (int i = 0; i < 3; ++i)
        r.c[i] = static_cast<F3>((a.m[i][0] * x.c[0] + a.m[i][1] * x.c[1] + a.m[i][2] * x.c[2]) % 3);
    return r;
}

inline F3Mat operator*(const F3Mat& a, const F3Mat& b) {
    F3Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int s = 0;
            for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = static_cast<F3>(s % 3);
        }
    return r;
}

inline F3Mat f3_transpose(const F3Mat& a) {
    F3Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
    return r;
}

inline F3 f3_det(const F3Mat& a) {
    int d = a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
            a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
            a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
    return static_cast<F3>(((d % 3) + 3) % 3);
}

/// The form <x,y>_A = <Ax, y>.
inline F3 f3_bilinear(const F3Mat& a, const F3Vec& x, const F3Vec& y) {
    return f3_dot(a * x, y);
}

/// One-dimensional subspace; the representative has first nonzero coordinate 1.
struct F3Line {
    F3Vec rep;

    bool operator==(const F3Line&) const = default;

    static F3Line through(const F3Vec& v) {
        if (v.is_zero()) throw BadShape("F3Line: zero vector");
        F3 lead = 0;
        for (int i = 0; i < 3; ++i)
            if (v.c[i] != 0) {
                lead = v.c[i];
                break;
            }
        // 2 is its own inverse mod 3
        return {lead == 1 ? v : 2 * v};
    }

    bool contains(const F3Vec& v) const {
        return v == F3Vec{} || F3Line::through(v) == *this;
    }
};

/// Two-dimensional subspace; spanning pair in reduced row echelon form.
struct F3Plane {
    std::array<F3Vec, 2> span;

    bool operator==(const F3Plane&) const = default;

    static F3Plane through(const F3Vec& u, const F3Vec& v) {
        std::array<F3Vec, 2> rows{u, v};
        // reduced row echelon form over F_3
        int pivot_row = 0;
        for (int col = 0; col < 3 && pivot_row < 2; ++col) {
            int found = -1;
            for (int r = pivot_row; r < 2; ++r)
                if (rows[r].c[col] != 0) {
                    found = r;
                    break;
                }
            if (found < 0) continue;
            std::swap(rows[pivot_row], rows[found]);
            if (rows[pivot_row].c[col] == 2) rows[pivot_row] = 2 * rows[pivot_row];
            for (int r = 0; r < 2; ++r)
                if (r != pivot_row && rows[r].c[col] != 0)
                    rows[r] = rows[r] + f3_neg(rows[r].c[col]) * rows[pivot_row];
            ++pivot_row;
        }
        if (pivot_row != 2) throw BadShape("F3Plane: vectors are dependent");
        return {{rows[0], rows[1]}};
    }

    bool contains(const F3Vec& v) const {
        for (F3 s = 0; s < 3; ++s)
            for (F3 t = 0; t < 3; ++t)
                if (v == s * span[0] + t * span[1]) return true;
        return false;
    }
};

/// All 13 one-dimensional subspaces of F_3^3, canonical reps in lex order.
inline std::vector<F3Line> enumerate_lines() {
    std::vector<F3Line> lines;
    for (F3 x = 0; x < 3; ++x)
        for (F3 y = 0; y < 3; ++y)
            for (F3 z = 0; z < 3; ++z) {
                F3Vec v{{x, y, z}};
                if (v.is_zero()) continue;
                F3Line l = F3Line::through(v);
                if (l.rep == v) lines.push_back(l);
            }
    return lines;
}

/// All 13 two-dimensional subspaces, ordered by their standard-dual line.
inline std::vector<F3Plane> enumerate_planes() {
    std::vector<F3Plane> planes;
    for (const F3Line& n : enumerate_lines()) {
        // kernel of v -> <n, v>
        std::vector<F3Vec> basis;
        for (F3 x = 0; x < 3 && basis.size() < 2; ++x)
            for (F3 y = 0; y < 3 && basis.size() < 2; ++y)
                for (F3 z = 0; z < 3 && basis.size() < 2; ++z) {
                    F3Vec v{{x, y, z}};
                    if (v.is_zero() || f3_dot(n.rep, v) != 0) continue;
                    if (basis.size() == 1 && F3Line::through(basis[0]).contains(v)) continue;
                    basis.push_back(v);
                }
        planes.push_back(F3Plane::through(basis[0], basis[1]));
    }
    return planes;
}

/**
 * The lines V with V contained in its dual V-perp w.r.t. <.,.>_A, for a
 * symmetric invertible A. Brute force over the 13 lines; there are always 4.
 */
inline std::vector<F3Line> isotropic_lines(const F3Mat& a) {
    if (!a.is_symmetric()) throw NotSymmetric();
    if (f3_det(a) == 0) throw Singular();
    std::vector<F3Line> result;
    for (const F3Line& l : enumerate_lines())
        if (f3_bilinear(a, l.rep, l.rep) == 0) result.push_back(l);
    return result;
}

/// Dual of a line w.r.t. <.,.>_A: the kernel plane of w -> <Av, w>.
inline F3Plane dual_of_line(const F3Mat& a, const F3Line& v) {
    F3Vec n = a * v.rep;
    if (n.is_zero()) throw BadShape("dual_of_line: line is in the radical");
    std::vector<F3Vec> basis;
    for (F3 x = 0; x < 3; ++x)
        for (F3 y = 0; y < 3; ++y)
            for (F3 z = 0; z < 3; ++z) {
                F3Vec w{{x, y, z}};
                if (w.is_zero() || f3_dot(n, w) != 0) continue;
                if (basis.size() == 1 && F3Line::through(basis[0]).contains(w)) continue;
                if (basis.size() < 2) basis.push_back(w);
            }
    return F3Plane::through(basis[0], basis[1]);
}

/// Dual of a plane w.r.t. <.,.>_A: the common kernel line of its span.
inline F3Line dual_of_plane(const F3Mat& a, const F3Plane& p) {
    F3Vec n0 = a * p.span[0];
    F3Vec n1 = a * p.span[1];
    std::optional<F3Vec> found;
    for (F3 x = 0; x < 3; ++x)
        for (F3 y = 0; y < 3; ++y)
            for (F3 z = 0; z < 3; ++z) {
                F3Vec w{{x, y, z}};
                if (w.is_zero() || f3_dot(n0, w) != 0 || f3_dot(n1, w) != 0) continue;
                if (found && !F3Line::through(*found).contains(w))
                    throw BadShape("dual_of_plane: dual has dimension > 1");
                if (!found) found = w;
            }
    if (!found) throw BadShape("dual_of_plane: dual is trivial");
    return F3Line::through(*found);
}

namespace detail {

inline void check_antisym_shape(const F3Mat& a) {
    bool shape = a.m[0][0] == 0 && a.m[1][1] == 0 && a.m[2][2] == 0 && a.m[1][2] == 0 &&
                 a.m[2][1] == 0 && a.m[1][0] == f3_neg(a.m[0][1]) && a.m[2][0] == f3_neg(a.m[0][2]);
    if (!shape || (a.m[0][1] == 0 && a.m[0][2] == 0))
        throw BadShape("expected the antisymmetric form with first row (0,a,b), (a,b) != 0");
}

}  // namespace detail

/**
 * Radical of the antisymmetric form with first row (0,a,b): the vector
 * (0, b, -a), unique up to scaling.
 */
inline F3Vec radical_vector(const F3Mat& a) {
    detail::check_antisym_shape(a);
    return {{0, a.m[0][2], f3_neg(a.m[0][1])}};
}

/**
 * The planes V with radical line inside V and V-perp = V w.r.t. the
 * antisymmetric form. Brute force over the planes through the radical;
 * there are always exactly 2.
 */
inline std::vector<F3Plane> self_dual_planes(const F3Mat& a) {
    F3Vec rad = radical_vector(a);
    std::vector<F3Plane> result;
    for (const F3Plane& p : enumerate_planes()) {
        if (!p.contains(rad)) continue;
        // V-perp: w such that <Av, w> = 0 for v spanning p
        F3Vec n0 = a * p.span[0];
        F3Vec n1 = a * p.span[1];
        bool self_dual = true;
        for (F3 x = 0; x < 3 && self_dual; ++x)
            for (F3 y = 0; y < 3 && self_dual; ++y)
                for (F3 z = 0; z < 3 && self_dual; ++z) {
                    F3Vec w{{x, y, z}};
                    bool in_perp = f3_dot(n0, w) == 0 && f3_dot(n1, w) == 0;
                    if (in_perp != p.contains(w)) self_dual = false;
                }
        if (self_dual) result.push_back(p);
    }
    return result;
}

/**
 * Congruence diagonalization of a symmetric invertible A: returns (B, D)
 * with B^T A B = D diagonal, diagonal entries in {1, 2}.
 */
inline std::pair<F3Mat, F3Mat> diagonalize_symmetric(const F3Mat& a) {
    if (!a.is_symmetric()) throw NotSymmetric();
    if (f3_det(a) == 0) throw Singular();
    F3Mat d = a;
    F3Mat b = F3Mat::identity();

    auto col_add = [&](F3Mat& m, int dst, int src, F3 s) {
        for (int r = 0; r < 3; ++r) m.m[r][dst] = static_cast<F3>((m.m[r][dst] + s * m.m[r][src]) % 3);
    };
    auto row_add = [&](F3Mat& m, int dst, int src, F3 s) {
        for (int c = 0; c < 3; ++c) m.m[dst][c] = static_cast<F3>((m.m[dst][c] + s * m.m[src][c]) % 3);
    };
    auto col_swap = [&](F3Mat& m, int i, int j) {
        for (int r = 0; r < 3; ++r) std::swap(m.m[r][i], m.m[r][j]);
    };
    auto row_swap = [&](F3Mat& m, int i, int j) {
        for (int c = 0; c < 3; ++c) std::swap(m.m[i][c], m.m[j][c]);
    };

    for (int i = 0; i < 3; ++i) {
        if (d.m[i][i] == 0) {
            int j = -1;
            for (int k = i + 1; k < 3; ++k)
                if (d.m[k][k] != 0) {
                    j = k;
                    break;
                }
            if (j >= 0) {
                col_swap(d, i, j);
                row_swap(d, i, j);
                col_swap(b, i, j);
            } else {
                // all remaining diagonal entries vanish; use an off-diagonal one
                for (int k = i + 1; k < 3 && d.m[i][i] == 0; ++k)
                    if (d.m[i][k] != 0) {
                        col_add(d, i, k, 1);
                        row_add(d, i, k, 1);
                        col_add(b, i, k, 1);
                    }
            }
        }
        if (d.m[i][i] == 0) throw Singular();
        F3 inv = d.m[i][i];  // 1 and 2 are both self-inverse mod 3
        for (int j = i + 1; j < 3; ++j) {
            if (d.m[i][j] == 0) continue;
            F3 q = f3_neg(static_cast<F3>(d.m[i][j] * inv % 3));
            col_add(d, j, i, q);
            row_add(d, j, i, q);
            col_add(b, j, i, q);
        }
    }
    return {b, d};
}

}  // namespace chisynth
