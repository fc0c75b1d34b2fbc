#include "bup4/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "bup4/errors.hpp"

namespace bup4 {

namespace {

bool prime_power_less(const PrimePower& a, const PrimePower& b) {
    return canonical_less(a.prime, b.prime);
}

// x^4 mod f applied to h, i.e. (h^2)^2 reduced after each squaring.
Poly frobenius4_mod(const Poly& h, const Poly& f) {
    Poly t = h.squared() % f;
    return t.squared() % f;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a06e33e16a4dULL;
    return z ^ (z >> 31);
}

std::uint64_t seed_from(const Poly& f) {
    std::uint64_t s = 0x5d1f00d4b5bULL;
    for (std::uint8_t c : f.codes()) s = s * 1099511628211ULL + c + 1;
    return s;
}

Poly random_below_degree(int degree, std::uint64_t& state) {
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(degree), 0);
    std::uint64_t bits = 0;
    int left = 0;
    for (auto& c : codes) {
        if (left == 0) {
            bits = splitmix64(state);
            left = 32;
        }
        c = static_cast<std::uint8_t>(bits & 3u);
        bits >>= 2;
        --left;
    }
    return Poly::from_codes(std::move(codes));
}

// Multiplicity-preserving squarefree decomposition in characteristic 2.
void squarefree_parts(const Poly& f, int outer_mult,
                      std::vector<std::pair<Poly, int>>& out) {
    if (f.is_one()) return;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        auto root = poly_sqrt(f);
        if (!root) throw std::logic_error("squarefree_parts: vanishing derivative without square");
        squarefree_parts(*root, 2 * outer_mult, out);
        return;
    }
    Poly g = gcd(f, fp);
    Poly w = f / g;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, g);
        Poly z = w / y;
        if (!z.is_one()) out.emplace_back(z, i * outer_mult);
        w = std::move(y);
        g = g / w;
        ++i;
    }
    if (!g.is_one()) {
        auto root = poly_sqrt(g);
        if (!root) throw std::logic_error("squarefree_parts: leftover is not a square");
        squarefree_parts(*root, 2 * outer_mult, out);
    }
}

// Distinct-degree stage: splits a monic squarefree g into products of
// irreducibles of one common degree each.
std::vector<std::pair<Poly, int>> distinct_degree_split(Poly g) {
    std::vector<std::pair<Poly, int>> out;
    Poly h = Poly::x() % g;
    int d = 0;
    while (2 * (d + 1) <= g.degree()) {
        ++d;
        h = frobenius4_mod(h, g);
        Poly part = gcd(g, h + (Poly::x() % g));
        if (!part.is_one()) {
            out.emplace_back(part, d);
            g = g / part;
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

// Equal-degree stage for even characteristic: the GF(2)-trace of a random
// element is 0 or 1 in each residue field, so its gcd with g splits the
// factors roughly in half.
void equal_degree_split(const Poly& g, int d, std::uint64_t& state,
                        std::vector<Poly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    for (;;) {
        Poly u = random_below_degree(g.degree(), state);
        Poly tr;
        Poly pw = u;
        for (int j = 0; j < 2 * d; ++j) { // trace from F_{2^{2d}} down to F_2
            tr += pw;
            pw = pw.squared() % g;
        }
        if (tr.is_zero()) continue;
        Poly part = gcd(g, tr);
        if (part.is_one() || part.degree() == g.degree()) continue;
        equal_degree_split(part, d, state, out);
        equal_degree_split(g / part, d, state, out);
        return;
    }
}

void check_factorable(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorize: zero polynomial");
    if (!f.is_monic()) throw std::domain_error("factorize: input must be monic");
}

} // namespace

Factorization Factorization::from_parts(std::vector<PrimePower> parts) {
    for (const auto& p : parts) {
        if (p.exp <= 0) throw std::domain_error("Factorization: exponent must be positive");
        if (!p.prime.is_monic() || p.prime.degree() < 1)
            throw std::domain_error("Factorization: prime must be monic of degree >= 1");
    }
    std::sort(parts.begin(), parts.end(), prime_power_less);
    std::vector<PrimePower> merged;
    for (auto& p : parts) {
        if (!merged.empty() && merged.back().prime == p.prime)
            merged.back().exp += p.exp;
        else
            merged.push_back(std::move(p));
    }
    Factorization f;
    f.parts_ = std::move(merged);
    return f;
}

Poly Factorization::product() const {
    Poly r = Poly::one();
    for (const auto& p : parts_) r *= pow(p.prime, static_cast<unsigned>(p.exp));
    return r;
}

int Factorization::degree() const noexcept {
    int d = 0;
    for (const auto& p : parts_) d += p.prime.degree() * p.exp;
    return d;
}

bool is_irreducible(const Poly& f) {
    if (!f.is_monic()) throw std::domain_error("is_irreducible: input must be monic");
    const int d = f.degree();
    if (d < 1) throw std::domain_error("is_irreducible: constant input");
    if (d == 1) return true;

    // x^(4^k) mod f for the k we need; keep the whole chain, prefixes are reused.
    std::vector<Poly> chain(static_cast<std::size_t>(d) + 1);
    chain[0] = Poly::x() % f;
    for (int k = 1; k <= d; ++k) chain[k] = frobenius4_mod(chain[k - 1], f);
    if (chain[static_cast<std::size_t>(d)] != chain[0]) return false;

    int rest = d;
    for (int q = 2; q * q <= rest; ++q) {
        if (rest % q != 0) continue;
        if (!gcd(chain[static_cast<std::size_t>(d / q)] + chain[0], f).is_one()) return false;
        while (rest % q == 0) rest /= q;
    }
    if (rest > 1 && rest < d) // rest == d means d prime, q = d gives exponent 1
        if (!gcd(chain[static_cast<std::size_t>(d / rest)] + chain[0], f).is_one()) return false;
    if (rest == d && d > 1) // d itself prime: check the k = 1 level
        if (!gcd(chain[1] + chain[0], f).is_one()) return false;
    return true;
}

std::optional<Poly> poly_sqrt(const Poly& f) {
    if (f.is_zero()) return Poly();
    std::vector<std::uint8_t> codes((static_cast<std::size_t>(f.degree()) / 2) + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
        const Gf4 c = f.coeff(i);
        if (c.is_zero()) continue;
        if (i % 2 != 0) return std::nullopt;
        codes[static_cast<std::size_t>(i / 2)] = c.square().code(); // sqrt(a) = a^2
    }
    return Poly::from_codes(std::move(codes));
}

const std::vector<Poly>& irreducibles_of_degree(int d) {
    if (d < 1) throw std::domain_error("irreducibles_of_degree: degree must be >= 1");
    static std::mutex mu;
    static std::map<int, std::vector<Poly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    std::vector<Poly> primes;
    for (const Poly& f : MonicRange(d)) {
        if (d >= 2) {
            bool has_root = false;
            for (Gf4 a : gf4_elements)
                if (f(a).is_zero()) { has_root = true; break; }
            if (has_root) continue;
        }
        if (d <= 3 || is_irreducible(f)) primes.push_back(f); // deg 2,3: no roots suffices
    }
    return cache.emplace(d, std::move(primes)).first->second;
}

namespace detail {

Factorization factorize_trial(const Poly& f) {
    check_factorable(f);
    std::vector<PrimePower> parts;
    Poly rest = f;
    for (int d = 1; rest.degree() >= 1 && 2 * d <= rest.degree(); ++d) {
        for (const Poly& p : irreducibles_of_degree(d)) {
            if (2 * d > rest.degree()) break;
            int e = 0;
            for (;;) {
                auto [q, r] = divrem(rest, p);
                if (!r.is_zero()) break;
                rest = std::move(q);
                ++e;
            }
            if (e > 0) parts.push_back({p, e});
        }
    }
    if (rest.degree() >= 1) parts.push_back({rest, 1});
    return Factorization::from_parts(std::move(parts));
}

Factorization factorize_generic(const Poly& f) {
    check_factorable(f);
    std::vector<std::pair<Poly, int>> squarefree;
    squarefree_parts(f, 1, squarefree);

    std::uint64_t state = seed_from(f);
    std::vector<PrimePower> parts;
    for (const auto& [part, mult] : squarefree) {
        for (const auto& [block, d] : distinct_degree_split(part)) {
            std::vector<Poly> primes;
            equal_degree_split(block, d, state, primes);
            for (auto& p : primes) parts.push_back({std::move(p), mult});
        }
    }
    return Factorization::from_parts(std::move(parts));
}

} // namespace detail

Factorization factorize(const Poly& f) {
    check_factorable(f);
    return f.degree() <= 8 ? detail::factorize_trial(f) : detail::factorize_generic(f);
}

int omega_count(const Poly& f) { return factorize(f).omega(); }

std::string factorization_to_json(const Factorization& f) {
    nlohmann::ordered_json j;
    j["factors"] = nlohmann::ordered_json::array();
    for (const auto& p : f.parts())
        j["factors"].push_back({{"prime", p.prime.str()}, {"exp", p.exp}});
    return j.dump();
}

} // namespace bup4
