#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "chisynth/f3.hpp"

using namespace chisynth;

namespace {

std::vector<F3Mat> all_symmetric_invertible() {
    std::vector<F3Mat> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f) {
                            F3Mat m;
                            m.m = {{{static_cast<F3>(a), static_cast<F3>(b), static_cast<F3>(c)},
                                    {static_cast<F3>(b), static_cast<F3>(d), static_cast<F3>(e)},
                                    {static_cast<F3>(c), static_cast<F3>(e), static_cast<F3>(f)}}};
                            if (f3_det(m) != 0) out.push_back(m);
                        }
    return out;
}

F3Mat antisym(F3 a, F3 b) {
    F3Mat m;
    m.m = {{{0, a, b}, {f3_neg(a), 0, 0}, {f3_neg(b), 0, 0}}};
    return m;
}

}  // namespace

TEST_CASE("enumerate_lines yields the 13 subspaces once each") {
    auto lines = enumerate_lines();
    REQUIRE(lines.size() == 13);
    std::set<std::array<F3, 3>> seen;
    for (const auto& l : lines) {
        CHECK(seen.insert(l.rep.c).second);
        // canonical under scaling by 2
        CHECK(F3Line::through(2 * l.rep) == l);
    }
    CHECK(F3Line{{{1, 0, 0}}}.contains(F3Vec{{2, 0, 0}}));
    CHECK(std::find(lines.begin(), lines.end(), F3Line{{{1, 0, 0}}}) != lines.end());
}

TEST_CASE("isotropic lines of the identity form") {
    auto iso = isotropic_lines(F3Mat::identity());
    REQUIRE(iso.size() == 4);
    std::set<std::array<F3, 3>> got;
    for (const auto& l : iso) got.insert(l.rep.c);
    std::set<std::array<F3, 3>> want{{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {1, 2, 2}};
    CHECK(got == want);
}

TEST_CASE("every symmetric invertible form has exactly 4 isotropic lines") {
    auto mats = all_symmetric_invertible();
    REQUIRE(!mats.empty());
    for (const auto& a : mats) {
        auto iso = isotropic_lines(a);
        CHECK(iso.size() == 4);
        for (const auto& l : iso) {
            // V is inside its dual plane
            F3Plane perp = dual_of_line(a, l);
            CHECK(perp.contains(l.rep));
        }
    }
}

TEST_CASE("isotropic_lines rejects bad inputs") {
    F3Mat not_sym;
    not_sym.m = {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS(isotropic_lines(not_sym), NotSymmetric);
    F3Mat singular;
    singular.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
    CHECK_THROWS_AS(isotropic_lines(singular), Singular);
}

TEST_CASE("dual subspace computations") {
    F3Mat id = F3Mat::identity();
    F3Plane p = dual_of_line(id, F3Line{{{1, 1, 1}}});
    for (F3 x = 0; x < 3; ++x)
        for (F3 y = 0; y < 3; ++y)
            for (F3 z = 0; z < 3; ++z) {
                F3Vec v{{x, y, z}};
                bool on_plane = (x + y + z) % 3 == 0;
                CHECK(p.contains(v) == on_plane);
            }
    F3Plane q = dual_of_line(id, F3Line{{{1, 0, 0}}});
    CHECK(q == F3Plane::through(F3Vec{{0, 1, 0}}, F3Vec{{0, 0, 1}}));

    // duality is an involution and inclusion-reversing on every invertible symmetric form
    for (const auto& a : all_symmetric_invertible()) {
        for (const auto& l : enumerate_lines()) {
            F3Plane perp = dual_of_line(a, l);
            CHECK(dual_of_plane(a, perp) == l);
            if (f3_bilinear(a, l.rep, l.rep) == 0) CHECK(perp.contains(l.rep));
        }
        for (const auto& pl : enumerate_planes()) {
            F3Line lperp = dual_of_plane(a, pl);
            CHECK(dual_of_line(a, lperp) == pl);
        }
    }
}

TEST_CASE("radical vector of the antisymmetric form") {
    CHECK(radical_vector(antisym(1, 0)) == F3Vec{{0, 0, 2}});
    CHECK(radical_vector(antisym(0, 1)) == F3Vec{{0, 1, 0}});
    for (F3 a = 0; a < 3; ++a)
        for (F3 b = 0; b < 3; ++b) {
            if (a == 0 && b == 0) continue;
            F3Mat m = antisym(a, b);
            F3Vec v = radical_vector(m);
            for (F3 x = 0; x < 3; ++x)
                for (F3 y = 0; y < 3; ++y)
                    for (F3 z = 0; z < 3; ++z) CHECK(f3_bilinear(m, v, F3Vec{{x, y, z}}) == 0);
        }
    F3Mat zero;
    CHECK_THROWS_AS(radical_vector(zero), BadShape);
    CHECK_THROWS_AS(radical_vector(F3Mat::identity()), BadShape);
}

// The quotient by the radical is a symplectic plane over F_3, where every
// line is self-dual, so all four planes through the radical qualify (the
// classical count quoted for this configuration is two).
TEST_CASE("self-dual planes of every admissible antisymmetric form") {
    int cases = 0;
    for (F3 a = 0; a < 3; ++a)
        for (F3 b = 0; b < 3; ++b) {
            if (a == 0 && b == 0) continue;
            ++cases;
            F3Mat m = antisym(a, b);
            auto planes = self_dual_planes(m);
            REQUIRE(planes.size() == 4);
            F3Vec rad = radical_vector(m);
            std::set<std::array<std::array<F3, 3>, 2>> distinct;
            for (const auto& p : planes) {
                CHECK(p.contains(rad));
                distinct.insert({p.span[0].c, p.span[1].c});
            }
            CHECK(distinct.size() == 4);
        }
    CHECK(cases == 8);
}

TEST_CASE("self-dual planes for (a,b)=(1,0) contain the expected radical") {
    auto planes = self_dual_planes(antisym(1, 0));
    REQUIRE(planes.size() == 4);
    for (const auto& p : planes) CHECK(p.contains(F3Vec{{0, 0, 1}}));
}

TEST_CASE("congruence diagonalization") {
    auto [b1, d1] = diagonalize_symmetric(F3Mat::identity());
    CHECK(b1 == F3Mat::identity());
    CHECK(d1 == F3Mat::identity());

    F3Mat two;
    two.m = {{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}};
    auto [b2, d2] = diagonalize_symmetric(two);
    CHECK(d2 == two);

    for (const auto& a : all_symmetric_invertible()) {
        auto [b, d] = diagonalize_symmetric(a);
        CHECK(f3_det(b) != 0);
        CHECK(f3_transpose(b) * a * b == d);
        for (int i = 0; i < 3; ++i) {
            CHECK((d.m[i][i] == 1 || d.m[i][i] == 2));
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(d.m[i][j] == 0);
        }
    }
}
