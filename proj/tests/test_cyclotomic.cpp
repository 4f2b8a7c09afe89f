#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chisynth/cyclotomic.hpp"

using namespace chisynth;

namespace {

// Independent oracle: v_pi by repeated exact division by chi.
long v_pi_by_division(EisensteinInteger z) {
    REQUIRE(!z.is_zero());
    long v = 0;
    while (z.divisible_by_chi()) {
        z = z.div_chi();
        ++v;
    }
    return v;
}

EisensteinInteger random_eisenstein(std::mt19937_64& rng, long span = 50) {
    long a = static_cast<long>(rng() % (2 * span + 1)) - span;
    long b = static_cast<long>(rng() % (2 * span + 1)) - span;
    return {Integer(a), Integer(b)};
}

FieldElement random_field_element(std::mt19937_64& rng) {
    EisensteinInteger z = random_eisenstein(rng);
    long e = static_cast<long>(rng() % 7) - 3;
    long d = 1 + static_cast<long>(rng() % 9);
    return FieldElement(z) * chi_pow(e) * FieldElement(Rational(1, d));
}

// Random element of the localization at chi (denominator coprime to 3).
FieldElement random_local_element(std::mt19937_64& rng) {
    static const long dens[] = {1, 2, 4, 5, 7, 8};
    EisensteinInteger z = random_eisenstein(rng);
    long d = dens[rng() % 6];
    return FieldElement(z) * FieldElement(Rational(1, d));
}

}  // namespace

TEST_CASE("v_pi on the anchor values") {
    CHECK(v_pi(FieldElement(3)) == Valuation(2));
    CHECK(v_pi(FieldElement(1)) == Valuation(0));
    // w - w^2 = w*chi
    FieldElement x = FieldElement::omega() - FieldElement::omega2();
    CHECK(v_pi(x) == Valuation(1));
    CHECK(v_pi(FieldElement(0)).is_infinite());
    CHECK(v_pi(FieldElement::chi()) == Valuation(1));
    CHECK(v_pi(FieldElement::chi_inv()) == Valuation(-1));
}

TEST_CASE("v_pi agrees with the repeated-division oracle") {
    std::mt19937_64 rng(20240901);
    int checked = 0;
    while (checked < 500) {
        EisensteinInteger z = random_eisenstein(rng, 200);
        if (z.is_zero()) continue;
        CHECK(v_pi(z) == Valuation(v_pi_by_division(z)));
        CHECK(v_pi(FieldElement(z)) == Valuation(v_pi_by_division(z)));
        ++checked;
    }
}

TEST_CASE("valuation is additive and satisfies the ultrametric inequality") {
    std::mt19937_64 rng(42);
    int checked = 0;
    while (checked < 1000) {
        FieldElement x = random_field_element(rng);
        FieldElement y = random_field_element(rng);
        if (x.is_zero() || y.is_zero()) continue;
        Valuation vx = v_pi(x);
        Valuation vy = v_pi(y);
        CHECK(v_pi(x * y) == vx + vy);
        Valuation vmin = vx < vy ? vx : vy;
        CHECK(v_pi(x + y) >= vmin);
        if (!(vx == vy)) CHECK(v_pi(x + y) == vmin);
        ++checked;
    }
}

TEST_CASE("x - conj(x) is divisible by chi on the localization") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        FieldElement x = random_local_element(rng);
        REQUIRE(v_pi(x) >= Valuation(0));
        FieldElement d = x - x.conj();
        if (!d.is_zero()) CHECK(v_pi(d) >= Valuation(1));
    }
}

TEST_CASE("residue_mod_chi basics") {
    CHECK(residue_mod_chi(FieldElement::omega()) == 1);
    // brute-force membership: (w - 1)/chi is exact
    EisensteinInteger wm1 = EisensteinInteger::omega() - EisensteinInteger(1);
    CHECK(wm1.divisible_by_chi());
    CHECK(residue_mod_chi(FieldElement(0)) == 0);
    CHECK(residue_mod_chi(FieldElement(Rational(1, 2))) == 2);
    CHECK(residue_mod_chi(FieldElement::chi()) == 0);
    CHECK_THROWS_AS(residue_mod_chi(FieldElement::chi_inv()), NegativeValuation);
}

TEST_CASE("chi_digits examples") {
    CHECK(chi_digits(FieldElement(3), 3) == std::vector<int>{0, 0, 2});
    // recomposition check for the first example: v_pi(3 - 2 chi^2) >= 3
    FieldElement rem = FieldElement(3) - FieldElement(2) * chi_pow(2);
    CHECK(v_pi(rem) >= Valuation(3));
    CHECK(chi_digits(FieldElement(0), 4) == std::vector<int>{0, 0, 0, 0});
    CHECK(chi_digits(FieldElement(1), 2) == std::vector<int>{1, 0});
    CHECK_THROWS_AS(chi_digits(FieldElement::chi_inv(), 2), NegativeValuation);
}

TEST_CASE("chi_digits recomposition up to depth 12") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = random_local_element(rng);
        std::size_t k = 1 + rng() % 12;
        std::vector<int> d = chi_digits(x, k);
        FieldElement sum{0};
        for (std::size_t j = 0; j < k; ++j) sum += FieldElement(d[j]) * chi_pow(static_cast<long>(j));
        FieldElement rem = x - sum;
        if (!rem.is_zero()) CHECK(v_pi(rem) >= Valuation(static_cast<long>(k)));
        for (int dig : d) CHECK((dig >= 0 && dig <= 2));
    }
}

TEST_CASE("conjugation and field operations") {
    CHECK(FieldElement::omega().conj() == FieldElement::omega2());
    CHECK(FieldElement(5).conj() == FieldElement(5));
    CHECK(FieldElement::chi() * FieldElement::chi().conj() == FieldElement(3));
    CHECK(FieldElement::omega() * FieldElement::omega() == FieldElement::omega2());
    // w^3 = 1
    CHECK(FieldElement::omega() * FieldElement::omega2() == FieldElement(1));

    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = random_field_element(rng);
        CHECK(x.conj().conj() == x);
        CHECK(v_pi(x.conj()) == v_pi(x));
        if (!x.is_zero()) {
            CHECK(x * x.inv() == FieldElement(1));
            CHECK(x / x == FieldElement(1));
        }
    }
    CHECK_THROWS_AS(FieldElement(0).inv(), DivisionByZero);
    CHECK_THROWS_AS(FieldElement(1) / FieldElement(0), DivisionByZero);
}

TEST_CASE("string form round-trips") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 200; ++i) {
        FieldElement x = random_field_element(rng);
        CHECK(parse_field_element(to_string(x)) == x);
    }
    CHECK(parse_field_element("w") == FieldElement::omega());
    CHECK(parse_field_element("w^2") == FieldElement::omega2());
    CHECK(parse_field_element("-w") == -FieldElement::omega());
    CHECK(parse_field_element("7") == FieldElement(7));
    CHECK(parse_field_element("-2/3") == FieldElement(Rational(-2, 3)));
    CHECK(parse_field_element("(1-1w)") == FieldElement::chi());
    CHECK(parse_field_element("(2/3+1/3w)") == FieldElement::chi_inv());
    CHECK(to_string(FieldElement::chi()) == "(1-1w)");
    CHECK_THROWS_AS(parse_field_element("(1+w"), ParseError);
    CHECK_THROWS_AS(parse_field_element("1/0"), ParseError);
    CHECK_THROWS_AS(parse_field_element("(1+2w) x"), ParseError);
}

TEST_CASE("valuation ordering with infinity") {
    Valuation inf = Valuation::infinity();
    CHECK(inf > Valuation(1000000));
    CHECK(inf == Valuation::infinity());
    CHECK((inf + Valuation(3)).is_infinite());
    CHECK(Valuation(-2) < Valuation(0));
}
