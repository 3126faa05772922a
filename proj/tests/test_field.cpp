#include "doctest.h"
#include "linsolve/errors.hpp"
#include "linsolve/field.hpp"

using namespace linsolve;

TEST_CASE("canonical modulus selection") {
    CHECK(Field::build(2, 3).modulus() == Poly::from_digits(2, "1,1,0,1"));
    CHECK(Field::build(2, 4).modulus() == Poly::from_digits(2, "1,1,0,0,1"));
    CHECK(Field::build(3, 2).modulus() == Poly::from_digits(3, "1,0,1"));
    CHECK_THROWS_AS(Field::build(4, 2), not_prime);
    CHECK_THROWS_AS(Field::build(2, 3, Poly::from_digits(2, "1,0,0,1")), not_irreducible);
}

TEST_CASE("arithmetic in GF(8)") {
    const Field f = Field::build(2, 3);
    const FieldElement g = f.gen();
    CHECK(g * g * g == g + f.one());  // g^3 = g + 1
    CHECK(g.pow(7) == f.one());
    CHECK(g.pow(0) == f.one());
    CHECK(g * g.inv() == f.one());
    CHECK((g + g).is_zero());
    CHECK(f.parse("1,0,1") == f.one() + g * g);
    CHECK_THROWS_AS(f.zero().inv(), division_by_zero);

    const Field other = Field::build(2, 4);
    CHECK(f != other);
    CHECK_THROWS_AS(f.one() + other.one(), field_mismatch);
}

TEST_CASE("arithmetic in GF(27)") {
    const Field f = Field::build(3, 3);
    const FieldElement g = f.gen();
    CHECK(g.pow(26) == f.one());
    CHECK(g.pow(13) == -f.one());  // the unique element of order 2
    CHECK(g.scaled(2) == g + g);
    FieldElement s = f.zero();
    for (int i = 0; i < 3; ++i) s = s + f.one();
    CHECK(s.is_zero());
}

TEST_CASE("frobenius is the p-power map") {
    const Field f = Field::build(3, 4);
    const FieldElement g = f.gen();
    CHECK(frobenius(g, 1) == g.pow(3));
    CHECK(frobenius(g + f.one(), 2) == (g + f.one()).pow(9));
    CHECK(frobenius(g, 4) == g);   // full degree folds to identity
    CHECK(frobenius(g, 5) == frobenius(g, 1));
    const FieldElement a = f.parse("2,1,0,2");
    CHECK(frobenius(a, 1) == a.pow(3));
    CHECK(frobenius(frobenius(a, 1), 3) == a);
}

TEST_CASE("frobenius matrices agree with the map") {
    const Field f = Field::build(2, 6);
    REQUIRE(f.has_frobenius_table());
    const FieldElement a = f.parse("1,0,1,1,0,1");
    for (unsigned t = 0; t < 6; ++t) {
        const FieldElement via_matrix = f.from_coeffs(f.frobenius_power_matrix(t).apply(a.coeffs()));
        CHECK(via_matrix == frobenius(a, t));
    }
    const FieldElement via_step = f.from_coeffs(f.frobenius_step_matrix().apply(a.coeffs()));
    CHECK(via_step == frobenius(a, 1));
}

TEST_CASE("subfield bases and membership") {
    const Field f = Field::build(2, 6);
    const SubfieldBasis b3 = subfield_basis(f, 3);
    const SubfieldBasis b2 = subfield_basis(f, 2);
    const SubfieldBasis b1 = subfield_basis(f, 1);
    CHECK(b3.vectors.size() == 3);
    CHECK(b2.vectors.size() == 2);
    CHECK(b1.vectors.size() == 1);
    CHECK(b1.vectors[0] == f.one());
    CHECK(b3.vectors[0] == f.one());

    CHECK(subfield_elements(b3).size() == 8);
    for (const FieldElement& x : subfield_elements(b3)) {
        CHECK(is_in_subfield(x, 3));
        CHECK(frobenius(x, 3) == x);
        CHECK(is_in_subfield(x, 6));
    }
    // GF(4) and GF(8) inside GF(64) intersect in GF(2)
    int common = 0;
    for (const FieldElement& x : subfield_elements(b3)) {
        if (is_in_subfield(x, 2)) ++common;
    }
    CHECK(common == 2);
    CHECK_THROWS_AS(subfield_basis(f, 4), not_a_divisor);
}

TEST_CASE("basis coordinates round trip") {
    const Field f = Field::build(3, 4);
    const SubfieldBasis b = subfield_basis(f, 2);
    REQUIRE(b.vectors.size() == 2);
    for (gfp::Scalar c0 = 0; c0 < 3; ++c0) {
        for (gfp::Scalar c1 = 0; c1 < 3; ++c1) {
            const FieldElement x = from_basis_coords(b, {c0, c1});
            const auto back = basis_coords(b, x);
            REQUIRE(back.has_value());
            CHECK(*back == std::vector<gfp::Scalar>{c0, c1});
        }
    }
    CHECK_FALSE(basis_coords(b, f.gen()).has_value());  // g generates GF(81), not GF(9)
}

TEST_CASE("relative trace-one elements") {
    {
        const Field f = Field::build(2, 6);
        const FieldElement d = solve_trace_one(f, 3, 6);
        CHECK(is_in_subfield(d, 6));
        CHECK(d + frobenius(d, 3) == f.one());
    }
    {
        const Field f = Field::build(3, 6);
        const FieldElement d = solve_trace_one(f, 1, 3);
        CHECK(is_in_subfield(d, 3));
        CHECK(d + frobenius(d, 1) + frobenius(d, 2) == f.one());
    }
    {
        // n = d: the empty-quotient trace is the identity, delta = 1
        const Field f = Field::build(2, 4);
        CHECK(solve_trace_one(f, 2, 2) == f.one());
    }
}

TEST_CASE("artin-schreier elements in the p*d tower") {
    {
        const Field f = Field::build(2, 6);
        const FieldElement d = solve_artin_schreier(f, 3);
        CHECK(d - frobenius(d, 3) == f.one());
        CHECK(is_in_subfield(d, 6));
    }
    {
        const Field f = Field::build(3, 6);
        const FieldElement d = solve_artin_schreier(f, 2);
        CHECK(d - frobenius(d, 2) == f.one());
        CHECK(is_in_subfield(d, 6));
    }
    {
        // for odd p no solution exists in GF(p^{2d}): exhaustive over GF(3^4), d = 2
        const Field f = Field::build(3, 4);
        const SubfieldBasis all = subfield_basis(f, 4);
        for (const FieldElement& x : subfield_elements(all)) {
            CHECK_FALSE(x - frobenius(x, 2) == f.one());
        }
    }
    {
        const Field f = Field::build(5, 5);
        const FieldElement d = solve_artin_schreier(f, 1);
        CHECK(d - frobenius(d, 1) == f.one());
    }
}

TEST_CASE("element serialization") {
    const Field f = Field::build(2, 3);
    const FieldElement x = f.parse("1,1,0");
    CHECK(x.to_digits() == "1,1,0");
    CHECK(f.parse(x.to_digits()) == x);
    CHECK(f.parse("1") == f.one());
    CHECK_THROWS_AS(f.parse("1,0,0,1"), parse_error);
}
