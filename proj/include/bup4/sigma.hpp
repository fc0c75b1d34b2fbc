#pragma once

#include <cstdint>
#include <vector>

#include "bup4/factor.hpp"
#include "bup4/poly.hpp"

namespace bup4 {

// Selects one of the three multiplicative divisor-sum functions.
enum class SigmaKind { All, Unitary, Biunitary };

inline constexpr SigmaKind all_sigma_kinds[] = {SigmaKind::All, SigmaKind::Unitary,
                                                SigmaKind::Biunitary};

inline constexpr std::uint64_t kDefaultDivisorCap = 1'000'000;

// Closed form at a prime power:
//   All:       1 + P + ... + P^e
//   Unitary:   1 + P^e
//   Biunitary: e = 2n   -> (1+P) * sigma(P^n) * sigma(P^(n-1))
//              e = 2n+1 -> sigma(P^e)
// The biunitary value is never divisible by P.
// With check_irreducible, throws std::domain_error when P is not irreducible.
Poly sigma_prime_power(const Poly& p, int e, SigmaKind kind, bool check_irreducible = true);

// Multiplicative evaluation over the factorization of s; sigma(1, k) = 1.
Poly sigma(const Poly& s, SigmaKind kind);
Poly sigma(const Factorization& fs, SigmaKind kind);

// Greatest common unitary divisor: product of p^e over primes p with
// v_p(a) = v_p(b) = e > 0.
Poly gcd_unitary(const Poly& a, const Poly& b);

// All monic divisors, generated from exponent sub-tuples of the factorization.
// Order: first factor's exponent varies fastest. Throws cap_error when the
// divisor count exceeds `cap`.
class DivisorRange {
public:
    explicit DivisorRange(const Poly& s, std::uint64_t cap = kDefaultDivisorCap);
    explicit DivisorRange(Factorization fs, std::uint64_t cap = kDefaultDivisorCap);

    std::uint64_t size() const noexcept { return count_; }

    class iterator {
    public:
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;

        iterator() noexcept = default;
        iterator(const DivisorRange* range, std::uint64_t pos);

        const Poly& operator*() const { return current_; }
        iterator& operator++();
        iterator operator++(int) { iterator t = *this; ++*this; return t; }
        friend bool operator==(const iterator& a, const iterator& b) noexcept {
            return a.pos_ == b.pos_;
        }

    private:
        void rebuild(std::size_t from);

        const DivisorRange* range_ = nullptr;
        std::uint64_t pos_ = 0;
        std::vector<int> exps_;
        std::vector<Poly> suffix_; // suffix_[i] = prod_{j >= i} prime_j^exps_[j]
        Poly current_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(nullptr, count_); }

private:
    friend class iterator;
    Factorization fs_;
    std::vector<std::vector<Poly>> powers_; // powers_[i][k] = prime_i^k
    std::uint64_t count_ = 1;
};

std::vector<Poly> divisors(const Poly& s, std::uint64_t cap = kDefaultDivisorCap);

// gcd_u(d, s/d) = 1. Throws std::domain_error unless d divides s.
bool is_biunitary_divisor(const Poly& d, const Poly& s);

// Literal sum over the divisors of s, filtered by kind. Independent oracle for
// the closed forms above.
Poly sigma_bruteforce(const Poly& s, SigmaKind kind, std::uint64_t cap = kDefaultDivisorCap);

// Fixed point of the selected divisor sum.
bool is_perfect(const Poly& s, SigmaKind kind);

// s admits no decomposition into coprime blocks of full prime powers with a
// bi-unitary perfect block: no unitary divisor d with 1 < d < s satisfies
// sigma**(d) = d. Requires s itself to be bi-unitary perfect.
bool is_indecomposable_bup(const Poly& s, std::uint64_t cap = kDefaultDivisorCap);
bool is_indecomposable_bup(const Factorization& fs, std::uint64_t cap = kDefaultDivisorCap);

// Every prime factor has degree 1 (vacuously true for s = 1).
bool splits(const Poly& s);

} // namespace bup4
