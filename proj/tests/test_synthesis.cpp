#include <catch2/catch_amalgamated.hpp>

#include "chisynth/synthesis.hpp"

using namespace chisynth;

TEST_CASE("sde basics") {
    CHECK(sde(Matrix3::identity()) == 0);
    CHECK(sde(gate_matrix(Gate::H)) == 1);
    CHECK(sde(Matrix3::diagonal(chi_pow(3), 1, 1)) == 0);
    CHECK_THROWS_AS(sde(Matrix3{}), Singular);
}

TEST_CASE("random_unitary is deterministic and lands in the group") {
    auto [w0, m0] = random_unitary(0, 7);
    CHECK(w0.empty());
    CHECK(m0 == Matrix3::identity());
    auto a = random_unitary(5, 42);
    auto b = random_unitary(5, 42);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto [w, m] = random_unitary(seed * 3 % 17 + 1, seed);
        CHECK(is_unitary(m));
        CHECK(in_ring(m));
        CHECK(sde(m) <= static_cast<long>(w.size()));
    }
}

TEST_CASE("verify is exact equality") {
    CHECK(verify({}, Matrix3::identity()));
    CHECK_FALSE(verify({Gate::H}, gate_matrix(Gate::S)));
    CHECK(verify({Gate::H, Gate::S}, gate_matrix(Gate::H) * gate_matrix(Gate::S)));
}

TEST_CASE("synthesis of the identity and of H", "[table]") {
    SynthesisResult ri = exact_synthesize(Matrix3::identity());
    CHECK(ri.steps == 0);
    CHECK(ri.initial_l == 0);
    CHECK(eval_word(ri.word) == Matrix3::identity());

    SynthesisResult rh = exact_synthesize(gate_matrix(Gate::H));
    CHECK(rh.initial_l == 2);
    CHECK(rh.steps == 1);
    CHECK(rh.decrements == std::vector<long>{2});
    CHECK(eval_word(rh.word) == gate_matrix(Gate::H));
}

TEST_CASE("synthesis rejects bad inputs", "[table]") {
    CHECK_THROWS_AS(exact_synthesize(Matrix3::diagonal(FieldElement::chi(), 1, 1)), NotUnitary);
    // unitary over Q(w) but outside Z[chi^-1]: entries with denominator 2
    Matrix3 bad = Matrix3::diagonal(FieldElement(Rational(1, 2), Rational(1, 1)) *
                                        FieldElement(1) /* (1/2 + w), |.|^2 = 3/4 */,
                                    1, 1);
    CHECK_FALSE((is_unitary(bad) && in_ring(bad)));
    CHECK_THROWS(exact_synthesize(bad));
    // unitary but with denominators prime to chi: a rational rotation
    Matrix3 rot{FieldElement(Rational(3, 5)), FieldElement(Rational(-4, 5)), 0,
                FieldElement(Rational(4, 5)), FieldElement(Rational(3, 5)),  0,
                0,                            0,                             1};
    REQUIRE(is_unitary(rot));
    CHECK_THROWS_AS(exact_synthesize(rot), NotInRing);
}

TEST_CASE("synthesis round-trips on seeded words", "[table]") {
    for (std::size_t len : {1, 10, 50}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto [w, u] = random_unitary(len, 97 * len + seed);
            SynthesisResult r = exact_synthesize(u);
            CHECK(eval_word(r.word) == u);
            CHECK(verify(r.word, u));
            for (long d : r.decrements) CHECK(d == 2);
            CHECK(r.initial_l == l_value(u));
            CHECK(r.steps == static_cast<long>(r.decrements.size()));
            long total = r.gate_counts[0] + r.gate_counts[1] + r.gate_counts[2];
            CHECK(total == static_cast<long>(r.word.size()));
        }
    }
}

TEST_CASE("synthesizing every monomial takes zero descent steps", "[table]") {
    for (const Monomial& m : enumerate_monomials()) {
        SynthesisResult r = exact_synthesize(m.to_matrix());
        CHECK(r.steps == 0);
        CHECK(eval_word(r.word) == m.to_matrix());
    }
}

TEST_CASE("word length against sde over the corpus", "[table]") {
    // reported, not asserted: minimal (a, b) with length <= a * sde + b
    long b = 0, a = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto [w, u] = random_unitary(5 * seed, seed);
        SynthesisResult r = exact_synthesize(u);
        long s = sde(u);
        long len = static_cast<long>(r.word.size());
        if (s == 0)
            b = std::max(b, len);
        else
            a = std::max(a, (len + s - 1) / s);
    }
    WARN("measured word-length bound: length <= " << a << " * sde + " << b);
    CHECK(a > 0);
}

TEST_CASE("orbit and stabilizer of the H vertex") {
    OrbitReport r = orbit_stabilizer_of_H_vertex();
    CHECK(r.product == 1296);
    CHECK(r.orbit_size == 12);
    CHECK(r.stabilizer_order == 108);

    OrbitReport ro = orbit_stabilizer_of_vertex(Matrix3::identity());
    CHECK(ro.orbit_size == 1);
    CHECK(ro.stabilizer_order == 1296);
}
