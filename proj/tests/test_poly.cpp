#include <random>

#include "doctest.h"
#include "linsolve/errors.hpp"
#include "linsolve/poly.hpp"

using namespace linsolve;

namespace {

Poly p2(const std::string& digits) { return Poly::from_digits(2, digits); }
Poly p3(const std::string& digits) { return Poly::from_digits(3, digits); }

Poly random_poly(std::mt19937_64& rng, std::uint64_t p, unsigned deg) {
    std::vector<gfp::Scalar> c(deg + 1);
    for (auto& v : c) v = static_cast<gfp::Scalar>(rng() % p);
    if (c[deg] == 0) c[deg] = 1;
    return Poly(p, std::move(c));
}

}  // namespace

TEST_CASE("construction trims and validates") {
    CHECK(Poly(2, {1, 1, 0, 0}).degree() == 1);
    CHECK(Poly(2).is_zero());
    CHECK(Poly(5, {7, 11}).coeffs() == std::vector<gfp::Scalar>{2, 1});
    CHECK(Poly(2, {0, 0}).degree() == -1);
    CHECK_THROWS_AS(Poly(4, {1}), not_prime);
    CHECK_THROWS_AS(Poly(1, {1}), not_prime);
}

TEST_CASE("arithmetic over GF(2) and GF(3)") {
    CHECK(p2("1,1,0,1") * p2("1,1,1,0,1") == p2("1,0,0,0,0,0,0,1"));
    CHECK(p3("1,1") * p3("2,1") == p3("2,0,1"));
    CHECK(p2("1,1") + p2("1,1") == Poly::zero(2));
    CHECK(-p3("1,2") == p3("2,1"));
    CHECK(p3("0,0,1").eval(2) == 1);
    CHECK(Poly::one_minus_xk(3, 2) == p3("1,0,2"));
    CHECK(Poly::monomial(2, 3) == p2("0,0,0,1"));
}

TEST_CASE("division with remainder") {
    auto [q, r] = divmod(p2("1,0,0,0,0,0,0,1"), p2("1,1,0,1"));
    CHECK(q == p2("1,1,1,0,1"));
    CHECK(r.is_zero());

    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (int i = 0; i < 40; ++i) {
            const Poly a = random_poly(rng, p, 1 + rng() % 9);
            const Poly b = random_poly(rng, p, 1 + rng() % 5);
            auto [qq, rr] = divmod(a, b);
            CHECK(qq * b + rr == a);
            CHECK(rr.degree() < b.degree());
        }
    }
    CHECK_THROWS_AS(divmod(p2("1"), Poly::zero(2)), division_by_zero);
}

TEST_CASE("exact division") {
    CHECK(exact_div(p2("1,1,1,0,1"), p2("1,1")) == p2("1,0,1,1"));
    CHECK_THROWS_AS(exact_div(p3("1,0,1"), p3("1,1")), not_divisible);
}

TEST_CASE("gcd and extended gcd") {
    CHECK(gcd(p2("1,1,1,1,1,1,1"), p2("1,1,1,0,1")) == p2("1,0,1,1"));
    CHECK_THROWS_AS(gcd(Poly::zero(2), Poly::zero(2)), both_zero);

    const auto bez = xgcd(p2("1,1"), p2("1,1,0,1"));
    CHECK(bez.g == Poly::one(2));
    CHECK(bez.s == p2("0,1,1"));
    CHECK(bez.t == Poly::one(2));

    std::mt19937_64 rng(11);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (int i = 0; i < 40; ++i) {
            const Poly a = random_poly(rng, p, 1 + rng() % 8);
            const Poly b = random_poly(rng, p, 1 + rng() % 8);
            const Poly g = gcd(a, b);
            CHECK(g.is_monic());
            CHECK(divmod(a, g).second.is_zero());
            CHECK(divmod(b, g).second.is_zero());
            const auto e = xgcd(a, b);
            CHECK(e.g == g);
            CHECK(e.s * a + e.t * b == g);
        }
    }
}

TEST_CASE("modular exponentiation") {
    CHECK(mod_pow(Poly::x(2), 7, p2("1,1,0,1")).is_one());
    CHECK_FALSE(mod_pow(Poly::x(2), 6, p2("1,1,0,1")).is_one());
    CHECK(mod_pow(p3("1,1"), 3, p3("1,0,0,1")) == divmod(p3("1,1") * p3("1,1") * p3("1,1"), p3("1,0,0,1")).second);
}

TEST_CASE("squarefree decomposition and distinct degrees") {
    const Poly prod = p2("1,1") * p2("1,1") * p2("1,1,0,1");
    const auto parts = squarefree_decomposition(prod);
    REQUIRE(parts.size() == 2);
    bool saw_single = false, saw_double = false;
    for (const auto& [f, m] : parts) {
        if (m == 1) {
            saw_single = true;
            CHECK(f == p2("1,1,0,1"));
        }
        if (m == 2) {
            saw_double = true;
            CHECK(f == p2("1,1"));
        }
    }
    CHECK(saw_single);
    CHECK(saw_double);

    const auto degs = distinct_degree_degrees(p2("1,1,1,0,1"));
    CHECK(degs == std::vector<unsigned>{1, 3});
}

TEST_CASE("multiplicative order of polynomials") {
    CHECK(polynomial_order(p2("1,1,0,1")) == 7);
    CHECK(polynomial_order(p2("1,1")) == 1);
    CHECK(polynomial_order(p2("1,0,1")) == 2);
    CHECK(polynomial_order(p2("1")) == 1);
    CHECK(polynomial_order(p3("2,1")) == 1);
    CHECK(polynomial_order(p3("1,1,1")) == 3);
    CHECK(polynomial_order(p3("2,0,0,1")) == 3);   // x^3 + 2 = (x - 1)^3 over GF(3)
    CHECK(polynomial_order(p3("1,2,0,1")) == 26);  // irreducible, its roots generate GF(27)*
    CHECK_THROWS_AS(polynomial_order(p2("0,1")), zero_constant_term);
    CHECK_THROWS_AS(polynomial_order(Poly::zero(2)), zero_polynomial);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        Poly l = random_poly(rng, 2, 1 + rng() % 7);
        auto c = l.coeffs();
        c[0] = 1;
        l = Poly(2, c);
        const std::uint64_t k = polynomial_order(l);
        CHECK(mod_pow(Poly::x(2), k, l).is_one());
        for (std::uint64_t q = 2; q <= k; ++q) {
            if (k % q == 0 && q < k) {
                // spot-check a couple of proper divisors
                if (q > 5 && q != k / 2) continue;
                CHECK_FALSE(mod_pow(Poly::x(2), q, l).is_one());
            }
        }
    }
}

TEST_CASE("irreducibility and deterministic search") {
    CHECK(is_irreducible(p2("1,1,0,1")));
    CHECK_FALSE(is_irreducible(p2("1,0,1,0,1")));
    CHECK(is_irreducible(p3("1,0,1")));
    CHECK_FALSE(is_irreducible(Poly::from_digits(5, "1,0,1")));

    CHECK(irreducible_search(2, 3) == p2("1,1,0,1"));
    CHECK(irreducible_search(2, 4) == p2("1,1,0,0,1"));
    CHECK(irreducible_search(3, 2) == p3("1,0,1"));
    CHECK(irreducible_search(2, 1) == p2("0,1"));
}

TEST_CASE("serialization round trips") {
    const Poly a = p2("1,1,0,1");
    CHECK(a.to_digits() == "1,1,0,1");
    CHECK(Poly::from_digits(2, a.to_digits()) == a);
    CHECK(Poly::parse(2, "x^3 + x + 1") == a);
    CHECK(Poly::parse(3, "2,0,1") == p3("2,0,1"));
    CHECK(Poly::zero(2).to_digits() == "0");
    CHECK_THROWS_AS(Poly::from_digits(2, "1,2"), parse_error);
    CHECK_THROWS_AS(Poly::from_digits(2, "1,,1"), parse_error);
    CHECK_THROWS_AS(Poly::from_digits(2, "abc"), parse_error);
}
