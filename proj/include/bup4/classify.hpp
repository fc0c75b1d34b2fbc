#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bup4/poly.hpp"
#include "bup4/sigma.hpp"

namespace bup4 {

// Exponents (a,b,c,d) bound to an ordered four-prime factor base.
struct ExponentTuple {
    std::array<int, 4> e{};

    bool not_all_odd() const noexcept {
        return e[0] % 2 == 0 || e[1] % 2 == 0 || e[2] % 2 == 0 || e[3] % 2 == 0;
    }
    auto operator<=>(const ExponentTuple&) const = default;
};

// Orbit under the substitutions x -> x+lambda (the double transpositions
// {id, (ab)(cd), (ac)(bd), (ad)(bc)} on positions) together with coefficient
// conjugation a <-> a+1 (the transposition (cd)). Both operations preserve
// every sigma fixed-point set, so hit sets are closed under this orbit.
std::vector<ExponentTuple> symmetry_orbit(const ExponentTuple& t);
std::vector<ExponentTuple> orbit_closure(const std::vector<ExponentTuple>& ts);

// x, x+1, x+a, x+a1
const std::array<Poly, 4>& splitting_base();

// P, P+1, P^3+P+1, P^3+P^2+1
std::array<Poly, 4> omega2_base(const Poly& p);

// Exponent-tuple families of the classification. SplitBup* and Perfect* bind
// to the splitting base; NonsplitBup* need Omega_1 pairs or an Omega_2 base.
enum class FamilyId {
    SplitBupAllTwos,         // (2,2,2,2)
    SplitBupTailMersenne,    // (2,2,2^n-1,2^n-1)
    SplitBupHeadMersenne,    // (2^n-1,2^n-1,2,2)
    SplitBupSporadic,        // the fourteen sporadic columns
    NonsplitBupAllTwos,      // (2,2,2,2) over two Omega_1 pairs
    NonsplitBupTailMersenne, // (2,2,2^n-1,2^n-1) over two Omega_1 pairs
    NonsplitBupHeadMersenne, // (2^n-1,2^n-1,2,2) over two Omega_1 pairs
    NonsplitBupSporadic,     // (7,13,2,2),(13,7,2,2),(14,14,2,2) over an Omega_2 quadruple
    PerfectMersennePairs,    // (2^n-1,2^n-1,2^m-1,2^m-1)
    PerfectEqualExponents,   // all equal to N*2^n-1, N in {1,3}
    PerfectAlternating,      // (3*2^r-1, 2^(r+1)-1, 3*2^r-1, 2^(r+1)-1)
    PerfectStaggered,        // (3*2^r-1, 3*2^r-1, 6*2^r-1, 2^(r+2)-1)
};

// Family base requirement: empty for the SplitBup* and Perfect* families;
// {P, R} with P, R in Omega_1 for the first three NonsplitBup families (the
// base becomes P, P+1, R, R+1); {P} with P in Omega_2 for NonsplitBupSporadic.
struct FamilyDescriptor {
    FamilyId id;
    std::vector<Poly> base;
};

// Exponent tuples with parameters n/m/r ranging over [0, param_bound].
// The all-zero tuple is dropped. Fixed-table families ignore param_bound.
std::vector<ExponentTuple> family_exponents(FamilyId id, int param_bound);

// Concrete polynomials; factors with exponent 0 are omitted.
std::vector<Poly> family_instances(const FamilyDescriptor& f, int param_bound);

struct SearchHit {
    std::vector<Poly> base;
    std::vector<int> exps;
    int degree = 0;

    friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

struct SearchLimits {
    std::uint64_t max_candidates = 50'000'000;
    std::uint64_t max_divisors = kDefaultDivisorCap;
    int threads = 1;
    int split_exp_cap = 64;     // largest allowed max_exp for the tuple scans
    int general_degree_cap = 12;
};

struct BoundEntry {
    std::string key;
    std::vector<long long> values;
    bool is_list = false;
};

struct SearchReport {
    std::string search;
    std::vector<BoundEntry> bounds;
    std::vector<SearchHit> hits;
    std::vector<SearchHit> decomposable_hits; // nonsplit-bup only
    std::uint64_t candidates = 0;
    long long elapsed_ms = 0; // measured wall time; zero it before serializing
                              // when byte-stable output matters
};

// All not-all-odd (a,b,c,d) in [1,max_exp]^4 with sigma**(A) = A over the
// splitting base, evaluated through per-prime-power exponent vectors.
SearchReport search_splitting_bup(int max_exp, const SearchLimits& limits = {});

// Candidate exponent sets for the four positions of the nonsplit search.
struct NonsplitExponentSets {
    std::vector<int> h, k, l, t;

    // h,k in {2,14} + {2^r-1 : r<=6} + {7*2^r-1 : r<=3}; l,t in {2} + {2^s-1 : s<=3}
    static NonsplitExponentSets curated();
    // everything in [1,hk_max] x [1,lt_max]; guards the curated sets
    static NonsplitExponentSets raw(int hk_max = 64, int lt_max = 15);
};

// For each P (which must lie in Omega_2), scans exponent tuples over the base
// P, P+1, P^3+P+1, P^3+P^2+1. Not-all-odd fixed points that are indecomposable
// land in hits, decomposable ones in decomposable_hits.
SearchReport search_nonsplit_bup(const std::vector<Poly>& p_list,
                                 const NonsplitExponentSets& sets = NonsplitExponentSets::curated(),
                                 const SearchLimits& limits = {});

// Structured enumeration of all monic A with deg <= max_degree: distinct
// irreducible supports, then exponents within the degree budget. Returns all
// sigma** fixed points, optionally restricted to omega(A) == omega_filter.
SearchReport search_general_bup(int max_degree, std::optional<int> omega_filter = std::nullopt,
                                const SearchLimits& limits = {});

// All sigma fixed points among splitting tuples in [1,max_exp]^4.
SearchReport search_perfect_splitting(int max_exp, const SearchLimits& limits = {});

enum class TheoremId { SplittingBup, NonsplittingBup, SplittingPerfect };

struct VerifyOptions {
    int max_exp = 31;            // tuple box for the splitting scans
    std::vector<Poly> p_list;    // nonsplitting bases; default {x}
    bool raw_exponents = false;  // nonsplitting: scan raw ranges instead of the curated sets
    SearchLimits limits{};
};

struct TheoremCheck {
    bool ok = false;
    std::vector<SearchHit> missing, extra;         // orbit-closed comparison
    std::vector<SearchHit> raw_missing, raw_extra; // literal listed-set diff, informational
    SearchReport report;
};

// Runs the matching search and compares its hit set against the orbit-closure
// of the family instantiations (nonsplitting: the fixed tuple set, per base).
TheoremCheck verify_theorem(TheoremId id, const VerifyOptions& opts = {});

std::string report_to_json(const SearchReport& r);
std::string report_to_text(const SearchReport& r);

} // namespace bup4
