#include "bup4/omega_sets.hpp"

#include <stdexcept>

#include "bup4/errors.hpp"
#include "bup4/factor.hpp"

namespace bup4 {

OmegaWitness omega_witness(const Poly& p, int set, int degree_cap) {
    if (set != 1 && set != 2) throw std::domain_error("omega_witness: set must be 1 or 2");
    if (!p.is_monic() || p.degree() < 1)
        throw std::domain_error("omega_witness: p must be monic of degree >= 1");
    if (p.degree() > degree_cap) throw cap_error("omega_witness: degree above cap");

    OmegaWitness w{p, set, {}, true};
    w.companions.push_back(p + Poly::one());
    if (set == 2) {
        // P^3+P+1 and P^3+P^2+1 as compositions
        w.companions.push_back(compose(Poly{1, 1, 0, 1}, p));
        w.companions.push_back(compose(Poly{1, 0, 1, 1}, p));
    }
    w.member = is_irreducible(p);
    for (const Poly& c : w.companions) {
        if (!w.member) break;
        w.member = is_irreducible(c);
    }
    return w;
}

bool in_omega1(const Poly& p, int degree_cap) { return omega_witness(p, 1, degree_cap).member; }

bool in_omega2(const Poly& p, int degree_cap) { return omega_witness(p, 2, degree_cap).member; }

Poly pk_family(int k, int degree_cap) {
    if (k < 0) throw std::domain_error("pk_family: k must be >= 0");
    long long power = 1;
    for (int i = 0; i < k; ++i) {
        power *= 5;
        if (2 * power > degree_cap) throw cap_error("pk_family: degree above cap");
    }
    const int e = static_cast<int>(power);
    return Poly::monomial(2 * e) + Poly::monomial(e) + Poly(Gf4::alpha());
}

std::vector<Poly> enumerate_omega(int max_degree, int set) {
    if (max_degree < 0) throw std::domain_error("enumerate_omega: negative degree");
    if (set != 1 && set != 2) throw std::domain_error("enumerate_omega: set must be 1 or 2");
    std::vector<Poly> out;
    for (int d = 1; d <= max_degree; ++d)
        for (const Poly& p : MonicRange(d)) {
            const bool member = set == 1 ? in_omega1(p) : in_omega2(p);
            if (member) out.push_back(p);
        }
    return out;
}

} // namespace bup4
