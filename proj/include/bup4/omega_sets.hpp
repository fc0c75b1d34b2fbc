#pragma once

#include <vector>

#include "bup4/poly.hpp"

namespace bup4 {

inline constexpr int kOmegaDegreeCap = 60;

// Membership evidence: the companion polynomials whose irreducibility was
// checked (P+1 for set 1; P+1, P^3+P+1, P^3+P^2+1 for set 2).
struct OmegaWitness {
    Poly p;
    int set = 1;
    std::vector<Poly> companions;
    bool member = false;
};

OmegaWitness omega_witness(const Poly& p, int set, int degree_cap = kOmegaDegreeCap);

// P and P+1 both irreducible.
bool in_omega1(const Poly& p, int degree_cap = kOmegaDegreeCap);

// Additionally P^3+P+1 and P^3+P^2+1 irreducible.
bool in_omega2(const Poly& p, int degree_cap = kOmegaDegreeCap);

// x^(2*5^k) + x^(5^k) + a. Throws cap_error when the degree exceeds the cap.
Poly pk_family(int k, int degree_cap = kOmegaDegreeCap);

// All members with 1 <= deg <= max_degree, in MonicRange order per degree.
std::vector<Poly> enumerate_omega(int max_degree, int set);

} // namespace bup4
