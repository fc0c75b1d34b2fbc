#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bup4/poly.hpp"

namespace bup4 {

struct PrimePower {
    Poly prime;
    int exp = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Factorization of a monic polynomial into distinct monic irreducibles,
// ordered by (degree, canonical text) of the prime.
class Factorization {
public:
    Factorization() = default; // factorization of 1

    // Sorts, merges equal primes, rejects nonpositive exponents.
    static Factorization from_parts(std::vector<PrimePower> parts);

    const std::vector<PrimePower>& parts() const noexcept { return parts_; }
    bool empty() const noexcept { return parts_.empty(); }
    std::size_t size() const noexcept { return parts_.size(); }
    int omega() const noexcept { return static_cast<int>(parts_.size()); }

    Poly product() const;
    int degree() const noexcept; // degree of the product

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> parts_;
};

// Rabin test: f of degree d is irreducible iff x^(4^d) = x (mod f) and
// gcd(x^(4^(d/q)) - x, f) = 1 for every prime q dividing d.
// Throws std::domain_error on non-monic or constant input.
bool is_irreducible(const Poly& f);

// g with g^2 = f when f is a square (all odd-index coefficients vanish, F4 is
// perfect so coefficients have square roots), otherwise none.
std::optional<Poly> poly_sqrt(const Poly& f);

// Complete factorization of a monic polynomial. Deterministic: the equal-degree
// splitting stage draws randomness from a generator seeded by the input.
// Throws std::domain_error on zero or non-monic input.
Factorization factorize(const Poly& f);

int omega_count(const Poly& f);

// All monic irreducibles of the given degree, in MonicRange order.
// Built lazily, shared, thread-safe.
const std::vector<Poly>& irreducibles_of_degree(int d);

// `{"factors":[{"prime":"<canonical text>","exp":k},...]}`
std::string factorization_to_json(const Factorization& f);

namespace detail {
// Both full paths, exposed so the property suite can certify they agree.
Factorization factorize_trial(const Poly& f);   // used for deg <= 8
Factorization factorize_generic(const Poly& f); // squarefree + DDF + EDF
} // namespace detail

} // namespace bup4
