#include <doctest.h>

#include <set>
#include <string>

#include "bup4/errors.hpp"
#include "bup4/poly.hpp"
#include "testutil.hpp"

using namespace bup4;

namespace {
Poly P(const char* text) { return poly_parse(text); }
} // namespace

TEST_CASE("poly multiplication") {
    CHECK(P("x+a") * P("x+a1") == P("x^2+x+1"));
    CHECK(P("x^3+a1x+1") * Poly::one() == P("x^3+a1x+1"));
    CHECK(P("x+1") * P("x+1") == P("x^2+1"));
    CHECK(P("x^2+x") * Poly::zero() == Poly::zero());
}

TEST_CASE("poly divrem") {
    SUBCASE("exact division") {
        auto [q, r] = divrem(P("x^2+x+1"), P("x+a"));
        CHECK(q == P("x+a1"));
        CHECK(r.is_zero());
    }
    SUBCASE("unit divisor") {
        auto [q, r] = divrem(P("x^5+ax^2+1"), Poly::one());
        CHECK(q == P("x^5+ax^2+1"));
        CHECK(r.is_zero());
    }
    SUBCASE("long division") {
        auto [q, r] = divrem(P("x^2+1"), P("x^2+x"));
        CHECK(q == Poly::one());
        CHECK(r == P("x+1"));
    }
    CHECK_THROWS_AS(divrem(P("x"), Poly::zero()), std::domain_error);
}

TEST_CASE("poly divrem reconstruction, randomized") {
    test::Rng rng(2024);
    for (int trial = 0; trial < 300;++trial) {
        Poly f = test::random_poly(rng, 32);
        Poly g = test::random_poly(rng, 16);
        if (g.is_zero()) continue;
        auto [q, r] = divrem(f, g);
        CHECK(q * g + r == f);
        CHECK(r.degree() < g.degree());
    }
}

TEST_CASE("poly gcd") {
    CHECK(gcd(P("x^2") * P("x+1"), P("x") * P("x+1") * P("x+1") * P("x+1")) == P("x^2+x"));
    CHECK(gcd(P("x^3+ax+1"), P("x^3+ax+1")) == P("x^3+ax+1"));
    CHECK(gcd(P("x+a"), P("x+a1")) == Poly::one());
    CHECK(gcd(Poly::zero(), P("ax+1")) == P("x+a1")); // gcd is monic
    CHECK_THROWS_AS(gcd(Poly::zero(), Poly::zero()), std::domain_error);
}

TEST_CASE("poly evaluation") {
    CHECK(P("x^3+x+1")(Gf4::zero()) == Gf4::one());
    CHECK(P("x+a")(Gf4::alpha()) == Gf4::zero());
    CHECK(P("x^2+x+a")(Gf4::one()) == Gf4::alpha());
}

TEST_CASE("poly composition") {
    const Poly p = P("x^2+x+a");
    CHECK(compose(P("x^3+x+1"), p) == p * p * p + p + Poly::one());
    CHECK(compose(P("x^3+x+1"), p).degree() == 6);
    CHECK(compose(P("x^4+ax^2+a1"), Poly::x()) == P("x^4+ax^2+a1"));
    CHECK(compose(P("x+1"), P("x+1")) == Poly::x());
}

TEST_CASE("poly parse and format") {
    CHECK(P("x^10+x^5+a").str() == "x^10+x^5+a");
    CHECK(P("0").is_zero());
    CHECK(Poly::zero().str() == "0");
    CHECK(P("x^2+x+a1") == Poly{3, 1, 1});
    CHECK(P(" x ^ 2 + 1 ").str() == "x^2+1");
    CHECK(P("x+x").is_zero()); // repeated terms sum in characteristic 2
    CHECK(P("a1x^3+ax+1").str() == "a1x^3+ax+1");

    CHECK_THROWS_AS(P(""), parse_error);
    CHECK_THROWS_AS(P("x^"), parse_error);
    CHECK_THROWS_AS(P("x++1"), parse_error);
    CHECK_THROWS_AS(P("b"), parse_error);
    CHECK_THROWS_AS(P("0+x"), parse_error);
    CHECK_THROWS_AS(P("x^9999999999"), parse_error);

    SUBCASE("parse error carries a position") {
        try {
            P("x^2+?");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.position() == 4);
        }
    }
}

TEST_CASE("parse/format round trip, randomized") {
    test::Rng rng(77);
    for (int trial = 0; trial < 400; ++trial) {
        Poly f = test::random_poly(rng, 64);
        CHECK(poly_parse(poly_format(f)) == f);
    }
}

TEST_CASE("frobenius on polynomials") {
    test::Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        Poly f = test::random_poly(rng, 20);
        Poly sq = f.squared();
        CHECK(sq == f * f);
        for (int i = 0; i <= sq.degree(); ++i) {
            if (i % 2 == 1)
                CHECK(sq.coeff(i).is_zero());
            else
                CHECK(sq.coeff(i) == f.coeff(i / 2).square());
        }
    }
}

TEST_CASE("monic enumeration") {
    SUBCASE("degree 0") {
        MonicRange range(0);
        CHECK(range.size() == 1);
        CHECK(*range.begin() == Poly::one());
    }
    SUBCASE("degree 1 in order") {
        std::vector<std::string> got;
        for (const Poly& f : MonicRange(1)) got.push_back(f.str());
        CHECK(got == std::vector<std::string>{"x", "x+1", "x+a", "x+a1"});
    }
    SUBCASE("degree 3 has 64 distinct members") {
        std::set<std::string> seen;
        for (const Poly& f : MonicRange(3)) {
            CHECK(f.is_monic());
            CHECK(f.degree() == 3);
            seen.insert(f.str());
        }
        CHECK(seen.size() == 64);
    }
    CHECK_THROWS_AS(MonicRange(-1), std::domain_error);
    CHECK_THROWS_AS(MonicRange(32), cap_error);
}

TEST_CASE("canonical ordering is degree then text") {
    CHECK(canonical_less(P("x+a1"), P("x^2")));
    CHECK(canonical_less(P("x^3+x+1"), P("x^3+x^2+1")));
    CHECK(canonical_less(P("x"), P("x+1")));
    CHECK(!canonical_less(P("x+1"), P("x+1")));
}
