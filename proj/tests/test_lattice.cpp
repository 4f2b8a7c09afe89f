#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chisynth/gates.hpp"
#include "chisynth/lattice.hpp"

using namespace chisynth;

namespace {

Matrix3 random_gl3_integral(std::mt19937_64& rng) {
    Matrix3 m = Matrix3::identity();
    for (int step = 0; step < 8; ++step) {
        int kind = static_cast<int>(rng() % 3);
        int i = static_cast<int>(rng() % 3);
        int j = static_cast<int>(rng() % 3);
        if (kind == 0 && i != j) {
            FieldElement z{EisensteinInteger(Integer(static_cast<long>(rng() % 5) - 2),
                                             Integer(static_cast<long>(rng() % 5) - 2))};
            for (int c = 0; c < 3; ++c) m.at(i, c) += z * m.at(j, c);
        } else if (kind == 1) {
            for (int c = 0; c < 3; ++c) std::swap(m.at(i, c), m.at(j, c));
        } else {
            int u = static_cast<int>(rng() % 6);
            for (int c = 0; c < 3; ++c) m.at(i, c) = unit_apply(u, m.at(i, c));
        }
    }
    return m;
}

GateWord random_word(std::mt19937_64& rng, std::size_t n) {
    GateWord w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<Gate>(rng() % 3));
    return w;
}

// random basis: products of generator words and diagonal chi powers
Matrix3 random_lattice_basis(std::mt19937_64& rng) {
    Matrix3 m = eval_word(random_word(rng, rng() % 6));
    m = m * Matrix3::diagonal(chi_pow(static_cast<long>(rng() % 5) - 2),
                              chi_pow(static_cast<long>(rng() % 5) - 2),
                              chi_pow(static_cast<long>(rng() % 5) - 2));
    return m * eval_word(random_word(rng, rng() % 6));
}

}  // namespace

TEST_CASE("canonical form is a basis invariant") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 100; ++i) {
        Matrix3 b = random_lattice_basis(rng);
        Lattice l1 = Lattice::from_basis(b);
        Lattice l2 = Lattice::from_basis(b * random_gl3_integral(rng));
        CHECK(l1 == l2);
        CHECK(l1.key() == l2.key());
        // canonical basis spans the same lattice
        CHECK(l1.contains(Lattice::from_basis(b)));
        CHECK(Lattice::from_basis(b).contains(l1));
        // canonical shape: lower-triangular, exact chi-power diagonal
        for (int r = 0; r < 3; ++r) {
            for (int c = r + 1; c < 3; ++c) CHECK(l1.basis().at(r, c).is_zero());
            CHECK(l1.basis().at(r, r) == chi_pow(l1.diag_exponents()[r]));
        }
        CHECK(Lattice::from_key(l1.key()) == l1);
    }
    CHECK_THROWS_AS(Lattice::from_basis(Matrix3{}), Singular);
}

TEST_CASE("canonical form of the H lattice") {
    Lattice lh = Lattice::from_basis(gate_matrix(Gate::H));
    CHECK(lh.diag_exponents() == std::array<long, 3>{-1, 0, 1});
    CHECK(lh.det_valuation() == 0);
    CHECK(is_self_dual(lh));
    CHECK(lh.basis().at(0, 0) == FieldElement::chi_inv());
}

TEST_CASE("dual is an involution and reverses inclusion") {
    std::mt19937_64 rng(2024);
    CHECK(Lattice::standard().dual() == Lattice::standard());
    for (int i = 0; i < 200; ++i) {
        Lattice l = Lattice::from_basis(random_lattice_basis(rng));
        CHECK(l.dual().dual() == l);
        // L ⊆ chi^-k L and duality flips the inclusion
        Lattice bigger = l.scaled(-1 - static_cast<long>(rng() % 2));
        CHECK(bigger.contains(l));
        CHECK(l.dual().contains(bigger.dual()));
    }
    // nested non-scalar pair
    Lattice a = Lattice::standard();
    Lattice b = Lattice::from_generators({{FieldElement(1), 0, 0},
                                          {0, FieldElement::chi(), 0},
                                          {0, 0, FieldElement::chi()}});
    CHECK(a.contains(b));
    CHECK(b.dual().contains(a.dual()));
    CHECK_FALSE(b.contains(a));
}

TEST_CASE("det valuation counts the lattice index") {
    Lattice o = Lattice::standard();
    CHECK(o.det_valuation() == 0);
    CHECK(o.scaled(2).det_valuation() == 6);
    CHECK(o.scaled(-1).det_valuation() == -3);
    CHECK(o.dual().det_valuation() == 0);
}

TEST_CASE("self-duality via the Gram matrix") {
    std::mt19937_64 rng(555);
    CHECK(is_self_dual(Lattice::standard()));
    for (int i = 0; i < 50; ++i) {
        Matrix3 u = eval_word(random_word(rng, 1 + rng() % 10));
        Lattice l = Lattice::from_basis(u * random_gl3_integral(rng));
        CHECK(is_self_dual(l));
        CHECK(l.dual() == l);  // agreement with the definitional test
        CHECK_FALSE(is_self_dual(l.scaled(1)));
    }
    CHECK_FALSE(is_self_dual(Lattice::from_basis(
        Matrix3::diagonal(FieldElement::chi(), 1, 1))));
    CHECK_FALSE(is_self_dual(Lattice::from_basis(
        Matrix3::diagonal(FieldElement::chi(), 1, FieldElement::chi_inv()))));

    // Gram test agrees with the definitional dual(L) == L on random lattices
    for (int i = 0; i < 100; ++i) {
        Lattice l = Lattice::from_basis(random_lattice_basis(rng));
        CHECK(is_self_dual(l) == (l.dual() == l));
    }
}

TEST_CASE("self_dualize recovers the self-dual representative") {
    std::mt19937_64 rng(808);
    CHECK(self_dualize(Lattice::standard().scaled(1)) == Lattice::standard());
    CHECK(self_dualize(Lattice::standard()) == Lattice::standard());
    for (int i = 0; i < 50; ++i) {
        Matrix3 u = eval_word(random_word(rng, 1 + rng() % 8));
        Lattice l = Lattice::from_basis(u);
        REQUIRE(is_self_dual(l));
        long k = static_cast<long>(rng() % 7) - 3;
        CHECK(self_dualize(l.scaled(k)) == l);
    }
    CHECK_THROWS_AS(self_dualize(Lattice::from_basis(
                        Matrix3::diagonal(FieldElement::chi(), 1, 1))),
                    NotPiEquivalentToDual);
}

TEST_CASE("generator lists beyond a basis canonicalize") {
    // O^3 plus a vector already inside stays O^3
    Lattice l = Lattice::from_generators({{FieldElement(1), 0, 0},
                                          {0, FieldElement(1), 0},
                                          {0, 0, FieldElement(1)},
                                          {FieldElement(2), FieldElement::omega(), FieldElement(5)}});
    CHECK(l == Lattice::standard());
    // adding chi^-1*(1,1,1) gives the index-3 overlattice
    Lattice big = Lattice::from_generators(
        {{FieldElement(1), 0, 0},
         {0, FieldElement(1), 0},
         {0, 0, FieldElement(1)},
         {FieldElement::chi_inv(), FieldElement::chi_inv(), FieldElement::chi_inv()}});
    CHECK(big.det_valuation() == -1);
    CHECK(big.contains(Lattice::standard()));
    CHECK_FALSE(Lattice::standard().contains(big));
}
