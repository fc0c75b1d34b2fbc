#include <doctest.h>

#include <algorithm>

#include "bup4/errors.hpp"
#include "bup4/sigma.hpp"
#include "testutil.hpp"

using namespace bup4;

namespace {

Poly P(const char* text) { return poly_parse(text); }

const Poly X = P("x");
const Poly X1 = P("x+1");
const Poly XA = P("x+a");
const Poly XA1 = P("x+a1");

// Greatest common unitary divisor found by scanning unitary divisors of both
// arguments; independent of the closed form in gcd_unitary.
Poly gcd_u_bruteforce(const Poly& a, const Poly& b) {
    Poly best = Poly::one();
    for (const Poly& d : DivisorRange(a)) {
        if (d.is_one()) continue;
        if (!gcd(d, a / d).is_one()) continue;
        if (!divides(d, b)) continue;
        if (!gcd(d, b / d).is_one()) continue;
        if (d.degree() > best.degree()) best = d;
    }
    return best;
}

} // namespace

TEST_CASE("sigma_prime_power closed forms at x") {
    CHECK(sigma_prime_power(X, 2, SigmaKind::Biunitary) == X1 * X1);
    CHECK(sigma_prime_power(X, 4, SigmaKind::Biunitary) == X1 * X1 * XA * XA1);
    CHECK(sigma_prime_power(X, 5, SigmaKind::Biunitary) == X1 * XA * XA * XA1 * XA1);
    CHECK(sigma_prime_power(X, 7, SigmaKind::Biunitary) == pow(X1, 7));
    CHECK(sigma_prime_power(X, 3, SigmaKind::Unitary) == P("x^3+1"));
    CHECK(sigma_prime_power(X, 3, SigmaKind::All) == P("x^3+x^2+x+1"));
    CHECK_THROWS_AS(sigma_prime_power(P("x^2+x+1"), 2, SigmaKind::All), std::domain_error);
    CHECK_THROWS_AS(sigma_prime_power(X, 0, SigmaKind::All), std::domain_error);
}

TEST_CASE("sigma** of a prime power is never divisible by the prime") {
    // and 1+T always divides it (deg T <= 3, c <= 16)
    for (int d = 1; d <= 3; ++d)
        for (const Poly& t : irreducibles_of_degree(d))
            for (int c = 1; c <= 16; ++c) {
                const Poly v = sigma_prime_power(t, c, SigmaKind::Biunitary, false);
                CHECK(divides(Poly::one() + t, v));
                CHECK(!divides(t, v));
            }
}

TEST_CASE("sigma on named inputs") {
    SUBCASE("sigma**(x^14) = (x+1)^8 (x^3+x+1) (x^3+x^2+1)") {
        CHECK(sigma(pow(X, 14), SigmaKind::Biunitary) ==
              pow(X1, 8) * P("x^3+x+1") * P("x^3+x^2+1"));
    }
    SUBCASE("the all-twos splitting polynomial is a sigma** fixed point") {
        const Poly a = pow(X, 2) * pow(X1, 2) * pow(XA, 2) * pow(XA1, 2);
        CHECK(sigma(a, SigmaKind::Biunitary) == a);
    }
    SUBCASE("sigma(x^5 (x+1)^3) against the brute-force oracle") {
        const Poly s = pow(X, 5) * pow(X1, 3);
        const Poly expected = pow(X, 3) * X1 * pow(XA, 2) * pow(XA1, 2);
        CHECK(sigma_bruteforce(s, SigmaKind::All) == expected);
        CHECK(sigma(s, SigmaKind::All) == expected);
    }
    SUBCASE("sigma(1) = 1 for every kind") {
        for (SigmaKind k : all_sigma_kinds) CHECK(sigma(Poly::one(), k) == Poly::one());
    }
    CHECK_THROWS_AS(sigma(Poly::zero(), SigmaKind::All), std::domain_error);
}

TEST_CASE("gcd_unitary") {
    CHECK(gcd_unitary(pow(XA, 3), pow(XA, 3)) == pow(XA, 3));
    CHECK(gcd_unitary(pow(X, 2), pow(X, 4)) == Poly::one());
    CHECK(gcd_unitary(pow(X, 2) * X1, pow(X, 2) * pow(X1, 3)) == pow(X, 2));

    SUBCASE("agrees with the brute-force maximum, exhaustive degree <= 5") {
        for (int da = 1; da <= 5; ++da)
            for (const Poly& a : MonicRange(da))
                for (int db = 1; db <= da; ++db)
                    for (const Poly& b : MonicRange(db)) {
                        const Poly g = gcd_unitary(a, b);
                        CHECK(g == gcd_u_bruteforce(a, b));
                        // a unitary divisor of both sides
                        CHECK(divides(g, a));
                        CHECK(gcd(g, a / g).is_one());
                        CHECK(divides(g, b));
                        CHECK(gcd(g, b / g).is_one());
                    }
    }
    SUBCASE("randomized beyond") {
        test::Rng rng(31337);
        for (int trial = 0; trial < 60; ++trial) {
            const Poly a = test::random_monic(rng, 1 + rng.below(9));
            const Poly b = test::random_monic(rng, 1 + rng.below(9));
            CHECK(gcd_unitary(a, b) == gcd_u_bruteforce(a, b));
        }
    }
}

TEST_CASE("divisors stream") {
    CHECK(divisors(Poly::one()) == std::vector<Poly>{Poly::one()});
    CHECK(divisors(pow(X, 2)) == std::vector<Poly>{Poly::one(), X, pow(X, 2)});
    CHECK(divisors(X * X1) == std::vector<Poly>{Poly::one(), X, X1, X * X1});
    CHECK_THROWS_AS(divisors(pow(X, 4) * pow(X1, 4), 20), cap_error);
    CHECK(DivisorRange(pow(X, 4) * pow(X1, 5)).size() == 30);
}

TEST_CASE("is_biunitary_divisor") {
    CHECK(!is_biunitary_divisor(X, pow(X, 2))); // gcd_u(x, x) = x
    CHECK(is_biunitary_divisor(Poly::one(), pow(X, 5) * X1));
    CHECK(is_biunitary_divisor(X, pow(X, 3))); // gcd_u(x, x^2) = 1
    CHECK_THROWS_AS(is_biunitary_divisor(X1, pow(X, 2)), std::domain_error);
}

TEST_CASE("sigma_bruteforce on named inputs") {
    CHECK(sigma_bruteforce(pow(X, 2), SigmaKind::Biunitary) == P("x^2+1"));
    CHECK(sigma_bruteforce(pow(X, 3), SigmaKind::All) == P("x^3+x^2+x+1"));
    CHECK(sigma_bruteforce(X * X1, SigmaKind::Unitary) == P("x^2+x"));
}

TEST_CASE("closed forms equal the brute-force oracle") {
    SUBCASE("exhaustive to degree 4") {
        for (int d = 1; d <= 4; ++d)
            for (const Poly& s : MonicRange(d))
                for (SigmaKind k : all_sigma_kinds)
                    CHECK(sigma(s, k) == sigma_bruteforce(s, k));
    }
    SUBCASE("randomized to degree 12") {
        test::Rng rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            const Poly s = test::random_monic(rng, 1 + rng.below(12));
            for (SigmaKind k : all_sigma_kinds) CHECK(sigma(s, k) == sigma_bruteforce(s, k));
        }
    }
}

TEST_CASE("multiplicativity over coprime pairs") {
    test::Rng rng(1234);
    int done = 0;
    while (done < 100) {
        const Poly a = test::random_monic(rng, 1 + rng.below(10));
        const Poly b = test::random_monic(rng, 1 + rng.below(10));
        if (!gcd(a, b).is_one()) continue;
        ++done;
        for (SigmaKind k : all_sigma_kinds) CHECK(sigma(a * b, k) == sigma(a, k) * sigma(b, k));
    }
}

TEST_CASE("all exponents odd makes sigma** collapse to sigma") {
    SUBCASE("exhaustive to degree 6") {
        for (int d = 1; d <= 6; ++d)
            for (const Poly& s : MonicRange(d)) {
                const auto fact = factorize(s);
                const bool all_odd = std::all_of(fact.parts().begin(), fact.parts().end(),
                                                 [](const PrimePower& p) { return p.exp % 2 == 1; });
                if (all_odd) CHECK(sigma(s, SigmaKind::Biunitary) == sigma(s, SigmaKind::All));
            }
    }
    SUBCASE("randomized odd-exponent products") {
        test::Rng rng(2718);
        for (int trial = 0; trial < 50; ++trial) {
            Poly s = Poly::one();
            for (int i = 0; i < 3; ++i) {
                const auto& primes = irreducibles_of_degree(1 + rng.below(3));
                s *= pow(primes[static_cast<std::size_t>(rng.below(static_cast<int>(primes.size())))],
                         static_cast<unsigned>(2 * rng.below(4) + 1));
            }
            s = factorize(s).product(); // normalize repeated picks
            const auto fact = factorize(s);
            const bool all_odd = std::all_of(fact.parts().begin(), fact.parts().end(),
                                             [](const PrimePower& p) { return p.exp % 2 == 1; });
            if (all_odd) CHECK(sigma(s, SigmaKind::Biunitary) == sigma(s, SigmaKind::All));
        }
    }
}

TEST_CASE("splitting criterion for sigma**(x^e), e <= 64") {
    auto predicted = [](int e) {
        if (e % 2 == 0) return e == 2 || e == 4 || e == 6;
        for (long long n = 1; (1LL << n) - 1 <= e; ++n)
            if ((1LL << n) - 1 == e) return true;
        for (long long n = 0; 3 * (1LL << n) - 1 <= e; ++n)
            if (3 * (1LL << n) - 1 == e) return true;
        return false;
    };
    for (int e = 1; e <= 64; ++e)
        CHECK(splits(sigma_prime_power(X, e, SigmaKind::Biunitary)) == predicted(e));
}

TEST_CASE("is_perfect") {
    CHECK(is_perfect(pow(X, 2) * pow(X1, 2) * pow(XA, 5) * pow(XA1, 3), SigmaKind::All));
    CHECK(is_perfect(pow(X, 4) * pow(X1, 3) * pow(XA, 3) * pow(XA1, 4), SigmaKind::Biunitary));
    for (SigmaKind k : all_sigma_kinds) CHECK(!is_perfect(X, k));
}

TEST_CASE("is_indecomposable_bup") {
    const Poly r = P("x^3+x+1"), s = P("x^3+x^2+1");
    CHECK(!is_indecomposable_bup(pow(X, 2) * pow(X1, 2) * pow(XA, 2) * pow(XA1, 2)));
    CHECK(is_indecomposable_bup(pow(X, 7) * pow(X1, 13) * pow(r, 2) * pow(s, 2)));
    CHECK(is_indecomposable_bup(pow(X, 2) * pow(X1, 2)));
    CHECK_THROWS_AS(is_indecomposable_bup(pow(X, 3)), std::domain_error); // not b.u.p.
}

TEST_CASE("splits") {
    CHECK(splits(pow(X, 3) * XA));
    CHECK(!splits(X * P("x^3+x+1")));
    CHECK(splits(Poly::one()));
}

TEST_CASE("translation preserves bi-unitary perfection") {
    const Poly a = pow(X, 4) * pow(X1, 3) * pow(XA, 3) * pow(XA1, 4);
    REQUIRE(is_perfect(a, SigmaKind::Biunitary));
    for (Gf4 lam : {Gf4::one(), Gf4::alpha(), Gf4::alpha1()}) {
        const Poly shifted = compose(a, Poly::x() + Poly(lam));
        CHECK(is_perfect(shifted, SigmaKind::Biunitary));
    }
}
