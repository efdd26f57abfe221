#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace valent;
using testgen::random_element;

TEST_CASE("valuation of concrete elements") {
    FieldDescriptor q3 = FieldDescriptor::padic(3);
    CHECK(FieldElement::padic(q3, Rat(5, 3)).valuation() == Val(-1));
    CHECK(field_zero(q3).valuation() == Val::infinity());
    CHECK(field_from_integer(q3, 9).valuation() == Val(2));

    FieldDescriptor pu = FieldDescriptor::puiseux();
    // t^{3/2} + t^2 has lowest exponent 3/2
    FieldElement x = puiseux_term(pu, Rat(1), Rat(3, 2)) + puiseux_term(pu, Rat(1), Rat(2));
    CHECK(x.valuation() == Val(Rat(3, 2)));
}

TEST_CASE("field arithmetic examples") {
    FieldDescriptor q2 = FieldDescriptor::padic(2);
    CHECK(FieldElement::padic(q2, Rat(1, 2)) + FieldElement::padic(q2, Rat(1, 2)) == field_one(q2));

    FieldDescriptor q3 = FieldDescriptor::padic(3);
    FieldElement prod = field_from_integer(q3, 3) * FieldElement::padic(q3, Rat(1, 9));
    CHECK(prod == FieldElement::padic(q3, Rat(1, 3)));
    CHECK(prod.valuation() == Val(-1));

    FieldDescriptor pu = FieldDescriptor::puiseux();
    FieldElement t = puiseux_term(pu, Rat(1), Rat(1));
    FieldElement root = puiseux_term(pu, Rat(1), Rat(1, 2));
    CHECK(t / root == root);
}

TEST_CASE("arithmetic error paths") {
    FieldDescriptor q2 = FieldDescriptor::padic(2);
    FieldDescriptor q3 = FieldDescriptor::padic(3);
    CHECK_THROWS_AS(field_one(q2) / field_zero(q2), std::domain_error);
    CHECK_THROWS_AS(field_one(q2) + field_one(q3), std::invalid_argument);
    CHECK_THROWS_AS(field_one(q2) * field_one(FieldDescriptor::puiseux()), std::invalid_argument);
    CHECK_THROWS_AS(FieldDescriptor::padic(6), std::invalid_argument);
}

TEST_CASE("residue reduction examples") {
    FieldDescriptor q2 = FieldDescriptor::padic(2);
    FieldElement x = FieldElement::padic(q2, Rat(7, 5));
    FieldElement r = residue_reduce(x, 2);
    CHECK(r == field_from_integer(q2, 3));
    CHECK((x - r).valuation() >= Val(2));  // 7/5 - 3 = -8/5 has valuation 3

    CHECK(residue_reduce(field_from_integer(q2, 4), 2) == field_zero(q2));

    FieldDescriptor pu = FieldDescriptor::puiseux();
    FieldElement geom = field_one(pu) / (field_one(pu) - puiseux_term(pu, Rat(1), Rat(1)));
    FieldElement trunc = residue_reduce(geom, Rat(2));
    CHECK(trunc == field_one(pu) + puiseux_term(pu, Rat(1), Rat(1)));
    CHECK((geom - trunc).valuation() >= Val(2));

    CHECK_THROWS_AS(residue_reduce(FieldElement::padic(q2, Rat(1, 2)), 1), std::domain_error);
    CHECK_THROWS_AS(residue_reduce(field_one(q2), Rat(-1)), std::domain_error);
}

TEST_CASE("ultrametric and multiplicativity properties") {
    for (FieldDescriptor f : {FieldDescriptor::padic(2), FieldDescriptor::padic(5), FieldDescriptor::puiseux()}) {
        CounterRng rng = CounterRng::derive(7101, f.is_padic() ? static_cast<std::uint64_t>(f.p()) : 99);
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement x = random_element(f, rng);
            FieldElement y = random_element(f, rng);
            Val vx = x.valuation(), vy = y.valuation();
            CHECK((x + y).valuation() >= min(vx, vy));
            if (vx != vy) CHECK((x + y).valuation() == min(vx, vy));
            CHECK((x * y).valuation() == vx + vy);
            if (!x.is_zero()) {
                CHECK((field_one(f) / x).valuation() == -vx);
                CHECK(x / x == field_one(f));
            }
        }
    }
}

TEST_CASE("field axioms on random elements") {
    for (FieldDescriptor f : {FieldDescriptor::padic(3), FieldDescriptor::puiseux()}) {
        CounterRng rng = CounterRng::derive(8112, f.is_padic() ? 1 : 2);
        for (int trial = 0; trial < 100; ++trial) {
            FieldElement x = random_element(f, rng);
            FieldElement y = random_element(f, rng);
            FieldElement z = random_element(f, rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x + (-x) == field_zero(f));
            CHECK(x - y == x + (-y));
        }
    }
}

TEST_CASE("residue reduction is idempotent and canonical") {
    for (FieldDescriptor f : {FieldDescriptor::padic(2), FieldDescriptor::padic(3), FieldDescriptor::puiseux()}) {
        CounterRng rng = CounterRng::derive(4242, f.is_padic() ? static_cast<std::uint64_t>(f.p()) : 99);
        for (int trial = 0; trial < 150; ++trial) {
            FieldElement x = random_element(f, rng, 0, 4);
            if (x.valuation() < Val(0)) continue;
            Rat gamma(rng.range(0, 3));
            if (f.is_puiseux() && rng.below(2) == 0) gamma += Rat(1, 2);
            FieldElement r = residue_reduce(x, gamma);
            CHECK(residue_reduce(r, gamma) == r);
            CHECK((r.is_zero() || r.valuation() < Val(gamma)));
            CHECK((x - r).valuation() >= Val(gamma));

            // congruent inputs reduce identically: y = x + pi^gamma * u
            FieldElement u = random_element(f, rng, 0, 2);
            if (u.valuation() < Val(0)) continue;
            FieldElement y = x + uniformizer_pow(f, gamma) * u;
            CHECK(residue_reduce(y, gamma) == r);
        }
    }
}

TEST_CASE("puiseux ramification is rescaled on combination") {
    FieldDescriptor pu = FieldDescriptor::puiseux();
    FieldElement a = puiseux_term(pu, Rat(1), Rat(1, 2));
    FieldElement b = puiseux_term(pu, Rat(1), Rat(1, 3));
    FieldElement s = a * b;
    CHECK(s.valuation() == Val(Rat(5, 6)));
    CHECK(s.fun().ram() == 6);
    // canonical minimal ramification: (t^{1/2})^2 collapses back to t
    CHECK((a * a).fun().ram() == 1);

    Rat huge = rat_pow(Int(7), 40);
    CHECK_THROWS_AS(puiseux_term(pu, Rat(1), huge), std::domain_error);
    CHECK_THROWS_AS(uniformizer_pow(FieldDescriptor::padic(3), Rat(1, 2)), std::domain_error);
}
