#include "bup4/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "bup4/errors.hpp"
#include "bup4/omega_sets.hpp"

namespace bup4 {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// fn(item, worker_id); items are independent, results go into per-item slots.
template <typename Fn>
void run_items(int n_items, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, n_items));
    if (threads <= 1) {
        for (int i = 0; i < n_items; ++i) fn(i, 0);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&](int wid) {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                const int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n_items) return;
                fn(i, wid);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Divides out every base prime as often as possible.
std::array<int, 4> extract_exponents(Poly& v, const std::array<Poly, 4>& base) {
    std::array<int, 4> exps{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (;;) {
            auto [q, r] = divrem(v, base[i]);
            if (!r.is_zero()) break;
            v = std::move(q);
            ++exps[i];
        }
    }
    return exps;
}

// sigma value of T^e over the base primes; unusable when a foreign prime divides it.
struct PrimePowerVec {
    bool usable = false;
    std::array<int, 4> e{};
};

PrimePowerVec vector_of(const Poly& prime, int e, SigmaKind kind, const std::array<Poly, 4>& base) {
    Poly v = sigma_prime_power(prime, e, kind, /*check_irreducible=*/false);
    PrimePowerVec pv;
    pv.e = extract_exponents(v, base);
    pv.usable = v.is_one();
    return pv;
}

int hit_degree(const std::vector<Poly>& base, const std::vector<int>& exps) {
    int d = 0;
    for (std::size_t i = 0; i < base.size(); ++i) d += base[i].degree() * exps[i];
    return d;
}

SearchHit make_hit(const std::array<Poly, 4>& base, const ExponentTuple& t) {
    SearchHit h;
    h.base.assign(base.begin(), base.end());
    h.exps.assign(t.e.begin(), t.e.end());
    h.degree = hit_degree(h.base, h.exps);
    return h;
}

bool hit_less(const SearchHit& a, const SearchHit& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.base.size() != b.base.size()) return a.base.size() < b.base.size();
    for (std::size_t i = 0; i < a.base.size(); ++i)
        if (a.base[i] != b.base[i]) return canonical_less(a.base[i], b.base[i]);
    return a.exps < b.exps;
}

// Shared tuple scan over the splitting base.
SearchReport scan_splitting(const char* name, int max_exp, SigmaKind kind,
                            bool not_all_odd_only, const SearchLimits& limits) {
    const auto start = Clock::now();
    if (max_exp < 1) throw std::domain_error("search: max_exp must be >= 1");
    if (max_exp > limits.split_exp_cap)
        throw cap_error("search: max_exp above configured cap");
    const std::uint64_t n = static_cast<std::uint64_t>(max_exp);
    const std::uint64_t candidates = n * n * n * n;
    if (candidates > limits.max_candidates)
        throw cap_error("search: candidate count exceeds cap");

    const auto& base = splitting_base();
    std::array<std::vector<PrimePowerVec>, 4> table;
    for (std::size_t pos = 0; pos < 4; ++pos) {
        table[pos].resize(static_cast<std::size_t>(max_exp) + 1);
        for (int e = 1; e <= max_exp; ++e)
            table[pos][static_cast<std::size_t>(e)] = vector_of(base[pos], e, kind, base);
    }

    std::vector<std::vector<SearchHit>> per_a(static_cast<std::size_t>(max_exp) + 1);
    run_items(max_exp, limits.threads, [&](int item, int) {
        const int a = item + 1;
        const auto& va = table[0][static_cast<std::size_t>(a)];
        if (!va.usable) return;
        auto& out = per_a[static_cast<std::size_t>(a)];
        for (int b = 1; b <= max_exp; ++b) {
            const auto& vb = table[1][static_cast<std::size_t>(b)];
            if (!vb.usable) continue;
            for (int c = 1; c <= max_exp; ++c) {
                const auto& vc = table[2][static_cast<std::size_t>(c)];
                if (!vc.usable) continue;
                const int s0 = va.e[0] + vb.e[0] + vc.e[0];
                const int s1 = va.e[1] + vb.e[1] + vc.e[1];
                const int s2 = va.e[2] + vb.e[2] + vc.e[2];
                const int s3 = va.e[3] + vb.e[3] + vc.e[3];
                for (int d = 1; d <= max_exp; ++d) {
                    if (not_all_odd_only && (a & b & c & d & 1) != 0) continue;
                    const auto& vd = table[3][static_cast<std::size_t>(d)];
                    if (!vd.usable) continue;
                    if (s0 + vd.e[0] == a && s1 + vd.e[1] == b && s2 + vd.e[2] == c &&
                        s3 + vd.e[3] == d)
                        out.push_back(make_hit(base, ExponentTuple{{a, b, c, d}}));
                }
            }
        }
    });

    SearchReport report;
    report.search = name;
    report.bounds.push_back({"max_exp", {max_exp}, false});
    for (auto& slot : per_a)
        report.hits.insert(report.hits.end(), slot.begin(), slot.end());
    std::sort(report.hits.begin(), report.hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return a.exps < b.exps; });
    report.candidates = candidates;
    report.elapsed_ms = ms_since(start);
    return report;
}

// sigma-kind value of T^e at a point, from T's value there. Evaluation commutes
// with the closed forms, which makes this an exact rejection screen.
Gf4 sigma_eval(Gf4 tval, int e, SigmaKind kind) {
    auto geo = [&](int m) {
        Gf4 acc = Gf4::one();
        for (int i = 0; i < m; ++i) acc = acc * tval + Gf4::one();
        return acc;
    };
    switch (kind) {
        case SigmaKind::All:
            return geo(e);
        case SigmaKind::Unitary: {
            Gf4 p = Gf4::one();
            for (int i = 0; i < e; ++i) p *= tval;
            return Gf4::one() + p;
        }
        case SigmaKind::Biunitary:
            if (e % 2 != 0) return geo(e);
            return (Gf4::one() + tval) * geo(e / 2) * geo(e / 2 - 1);
    }
    return Gf4::zero();
}

} // namespace

const std::array<Poly, 4>& splitting_base() {
    static const std::array<Poly, 4> base = {Poly::x(), Poly{1, 1}, Poly{2, 1}, Poly{3, 1}};
    return base;
}

std::array<Poly, 4> omega2_base(const Poly& p) {
    return {p, p + Poly::one(), compose(Poly{1, 1, 0, 1}, p), compose(Poly{1, 0, 1, 1}, p)};
}

std::vector<ExponentTuple> symmetry_orbit(const ExponentTuple& t) {
    const auto [a, b, c, d] = t.e;
    // translations x -> x+lambda give the double transpositions; coefficient
    // conjugation a <-> a+1 swaps the last two positions on top of them
    std::vector<ExponentTuple> orbit = {
        t,
        {{b, a, d, c}}, {{c, d, a, b}}, {{d, c, b, a}}, // x -> x+1, x+a, x+a1
        {{a, b, d, c}},
        {{b, a, c, d}}, {{c, d, b, a}}, {{d, c, a, b}}, // conjugated images
    };
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

std::vector<ExponentTuple> orbit_closure(const std::vector<ExponentTuple>& ts) {
    std::vector<ExponentTuple> out;
    for (const auto& t : ts) {
        auto orbit = symmetry_orbit(t);
        out.insert(out.end(), orbit.begin(), orbit.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ExponentTuple> family_exponents(FamilyId id, int param_bound) {
    if (param_bound < 0 || param_bound > 28)
        throw std::domain_error("family_exponents: param_bound out of range");
    std::vector<ExponentTuple> out;
    auto add = [&](long long a, long long b, long long c, long long d) {
        if (a == 0 && b == 0 && c == 0 && d == 0) return;
        out.push_back({{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c),
                        static_cast<int>(d)}});
    };
    auto mersenne = [](int n) { return (1LL << n) - 1; };
    switch (id) {
        case FamilyId::SplitBupAllTwos:
        case FamilyId::NonsplitBupAllTwos:
            add(2, 2, 2, 2);
            break;
        case FamilyId::SplitBupTailMersenne:
        case FamilyId::NonsplitBupTailMersenne:
            for (int n = 0; n <= param_bound; ++n) add(2, 2, mersenne(n), mersenne(n));
            break;
        case FamilyId::SplitBupHeadMersenne:
        case FamilyId::NonsplitBupHeadMersenne:
            for (int n = 0; n <= param_bound; ++n) add(mersenne(n), mersenne(n), 2, 2);
            break;
        case FamilyId::SplitBupSporadic: {
            static constexpr int cols[14][4] = {
                {4, 3, 3, 4}, {4, 3, 4, 3}, {4, 4, 3, 5}, {4, 4, 4, 4}, {4, 4, 5, 3},
                {4, 4, 6, 6}, {5, 3, 4, 4}, {5, 3, 6, 6}, {5, 4, 4, 5}, {5, 4, 5, 4},
                {6, 6, 3, 5}, {6, 6, 4, 4}, {6, 6, 5, 3}, {6, 6, 6, 6}};
            for (const auto& c : cols) add(c[0], c[1], c[2], c[3]);
            break;
        }
        case FamilyId::NonsplitBupSporadic:
            add(7, 13, 2, 2);
            add(13, 7, 2, 2);
            add(14, 14, 2, 2);
            break;
        case FamilyId::PerfectMersennePairs:
            for (int n = 0; n <= param_bound; ++n)
                for (int m = 0; m <= param_bound; ++m)
                    add(mersenne(n), mersenne(n), mersenne(m), mersenne(m));
            break;
        case FamilyId::PerfectEqualExponents:
            for (long long N : {1LL, 3LL})
                for (int n = 0; n <= param_bound; ++n)
                    add(N * (1LL << n) - 1, N * (1LL << n) - 1, N * (1LL << n) - 1,
                        N * (1LL << n) - 1);
            break;
        case FamilyId::PerfectAlternating:
            for (int r = 0; r <= param_bound; ++r)
                add(3 * (1LL << r) - 1, mersenne(r + 1), 3 * (1LL << r) - 1, mersenne(r + 1));
            break;
        case FamilyId::PerfectStaggered:
            for (int r = 0; r <= param_bound; ++r)
                add(3 * (1LL << r) - 1, 3 * (1LL << r) - 1, 6 * (1LL << r) - 1,
                    4 * (1LL << r) - 1);
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Poly> family_instances(const FamilyDescriptor& f, int param_bound) {
    std::array<Poly, 4> base;
    switch (f.id) {
        case FamilyId::NonsplitBupAllTwos:
        case FamilyId::NonsplitBupTailMersenne:
        case FamilyId::NonsplitBupHeadMersenne: {
            if (f.base.size() != 2)
                throw std::domain_error("family_instances: family needs a base {P, R}");
            const Poly &p = f.base[0], &r = f.base[1];
            if (!in_omega1(p) || !in_omega1(r))
                throw std::domain_error("family_instances: base polynomials must lie in Omega_1");
            base = {p, p + Poly::one(), r, r + Poly::one()};
            break;
        }
        case FamilyId::NonsplitBupSporadic: {
            if (f.base.size() != 1)
                throw std::domain_error("family_instances: family needs a base {P}");
            if (!in_omega2(f.base[0]))
                throw std::domain_error("family_instances: base polynomial must lie in Omega_2");
            base = omega2_base(f.base[0]);
            break;
        }
        default:
            if (f.base.empty()) {
                base = splitting_base();
            } else if (f.base.size() == 4) {
                std::copy(f.base.begin(), f.base.end(), base.begin());
            } else {
                throw std::domain_error("family_instances: splitting family base must have 4 primes");
            }
            break;
    }
    std::set<std::string> seen;
    for (const auto& b : base)
        if (!seen.insert(b.str()).second)
            throw std::domain_error("family_instances: base primes must be distinct");

    std::vector<Poly> out;
    for (const auto& t : family_exponents(f.id, param_bound)) {
        Poly a = Poly::one();
        for (std::size_t i = 0; i < 4; ++i)
            if (t.e[i] > 0) a *= pow(base[i], static_cast<unsigned>(t.e[i]));
        out.push_back(std::move(a));
    }
    return out;
}

SearchReport search_splitting_bup(int max_exp, const SearchLimits& limits) {
    return scan_splitting("split-bup", max_exp, SigmaKind::Biunitary,
                          /*not_all_odd_only=*/true, limits);
}

SearchReport search_perfect_splitting(int max_exp, const SearchLimits& limits) {
    return scan_splitting("split-perfect", max_exp, SigmaKind::All,
                          /*not_all_odd_only=*/false, limits);
}

NonsplitExponentSets NonsplitExponentSets::curated() {
    NonsplitExponentSets s;
    s.h = {1, 2, 3, 7, 13, 14, 15, 27, 31, 55, 63};
    s.k = s.h;
    s.l = {1, 2, 3, 7};
    s.t = s.l;
    return s;
}

NonsplitExponentSets NonsplitExponentSets::raw(int hk_max, int lt_max) {
    NonsplitExponentSets s;
    for (int e = 1; e <= hk_max; ++e) s.h.push_back(e);
    s.k = s.h;
    for (int e = 1; e <= lt_max; ++e) s.l.push_back(e);
    s.t = s.l;
    return s;
}

SearchReport search_nonsplit_bup(const std::vector<Poly>& p_list,
                                 const NonsplitExponentSets& sets, const SearchLimits& limits) {
    const auto start = Clock::now();
    if (p_list.empty()) throw std::domain_error("search_nonsplit_bup: empty base list");
    std::array<std::vector<int>, 4> exp_sets = {sets.h, sets.k, sets.l, sets.t};
    for (auto& s : exp_sets) {
        if (s.empty()) throw std::domain_error("search_nonsplit_bup: empty exponent set");
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.front() < 1) throw std::domain_error("search_nonsplit_bup: exponents must be >= 1");
    }
    const std::uint64_t per_base = static_cast<std::uint64_t>(exp_sets[0].size()) *
                                   exp_sets[1].size() * exp_sets[2].size() * exp_sets[3].size();
    const std::uint64_t candidates = per_base * p_list.size();
    if (candidates > limits.max_candidates)
        throw cap_error("search: candidate count exceeds cap");

    for (const Poly& p : p_list)
        if (!in_omega2(p))
            throw std::domain_error("search_nonsplit_bup: base polynomial not in Omega_2");

    struct Slot {
        std::vector<SearchHit> hits, decomposable;
    };
    std::vector<Slot> slots(p_list.size());

    run_items(static_cast<int>(p_list.size()), limits.threads, [&](int item, int) {
        const auto base = omega2_base(p_list[static_cast<std::size_t>(item)]);
        std::array<std::vector<PrimePowerVec>, 4> table;
        for (std::size_t pos = 0; pos < 4; ++pos)
            for (int e : exp_sets[pos])
                table[pos].push_back(vector_of(base[pos], e, SigmaKind::Biunitary, base));

        auto& slot = slots[static_cast<std::size_t>(item)];
        for (std::size_t ih = 0; ih < exp_sets[0].size(); ++ih) {
            if (!table[0][ih].usable) continue;
            for (std::size_t ik = 0; ik < exp_sets[1].size(); ++ik) {
                if (!table[1][ik].usable) continue;
                for (std::size_t il = 0; il < exp_sets[2].size(); ++il) {
                    if (!table[2][il].usable) continue;
                    for (std::size_t it = 0; it < exp_sets[3].size(); ++it) {
                        if (!table[3][it].usable) continue;
                        const ExponentTuple t{{exp_sets[0][ih], exp_sets[1][ik], exp_sets[2][il],
                                               exp_sets[3][it]}};
                        if (!t.not_all_odd()) continue;
                        std::array<int, 4> sum{};
                        const PrimePowerVec* vs[4] = {&table[0][ih], &table[1][ik], &table[2][il],
                                                      &table[3][it]};
                        for (const auto* v : vs)
                            for (std::size_t j = 0; j < 4; ++j) sum[j] += v->e[j];
                        if (sum != t.e) continue;

                        std::vector<PrimePower> parts;
                        for (std::size_t j = 0; j < 4; ++j) parts.push_back({base[j], t.e[j]});
                        const Factorization fa = Factorization::from_parts(std::move(parts));
                        if (sigma(fa, SigmaKind::Biunitary) != fa.product())
                            throw std::logic_error("search_nonsplit_bup: vector hit failed recheck");
                        if (is_indecomposable_bup(fa, limits.max_divisors))
                            slot.hits.push_back(make_hit(base, t));
                        else
                            slot.decomposable.push_back(make_hit(base, t));
                    }
                }
            }
        }
    });

    SearchReport report;
    report.search = "nonsplit-bup";
    auto as_ll = [](const std::vector<int>& v) {
        return std::vector<long long>(v.begin(), v.end());
    };
    report.bounds.push_back({"h", as_ll(exp_sets[0]), true});
    report.bounds.push_back({"k", as_ll(exp_sets[1]), true});
    report.bounds.push_back({"l", as_ll(exp_sets[2]), true});
    report.bounds.push_back({"t", as_ll(exp_sets[3]), true});
    for (auto& slot : slots) {
        report.hits.insert(report.hits.end(), slot.hits.begin(), slot.hits.end());
        report.decomposable_hits.insert(report.decomposable_hits.end(), slot.decomposable.begin(),
                                        slot.decomposable.end());
    }
    report.candidates = candidates;
    report.elapsed_ms = ms_since(start);
    return report;
}

namespace {

struct PoolPrime {
    Poly poly;
    int degree;
    std::array<Gf4, 4> eval; // values at 0, 1, a, a+1
};

struct GeneralScanContext {
    const std::vector<PoolPrime>* pool;
    std::optional<int> omega_filter;
};

// One worker's traversal state.
struct GeneralWorker {
    const GeneralScanContext* ctx = nullptr;
    std::vector<std::pair<std::size_t, int>> stack; // (pool index, exponent)
    std::vector<SearchHit>* out = nullptr;
    std::unordered_map<std::uint64_t, Poly> sigma_memo; // (pool_idx << 8) | exp
    std::uint64_t local_candidates = 0;

    const Poly& sigma_of(std::size_t idx, int e) {
        const std::uint64_t key = (static_cast<std::uint64_t>(idx) << 8) |
                                  static_cast<std::uint64_t>(e);
        auto it = sigma_memo.find(key);
        if (it != sigma_memo.end()) return it->second;
        Poly v = sigma_prime_power((*ctx->pool)[idx].poly, e, SigmaKind::Biunitary, false);
        return sigma_memo.emplace(key, std::move(v)).first->second;
    }

    void full_check() {
        Poly a = Poly::one(), v = Poly::one();
        for (const auto& [idx, e] : stack) {
            a *= pow((*ctx->pool)[idx].poly, static_cast<unsigned>(e));
            v *= sigma_of(idx, e);
        }
        if (a != v) return;
        SearchHit hit;
        for (const auto& [idx, e] : stack) {
            hit.base.push_back((*ctx->pool)[idx].poly);
            hit.exps.push_back(e);
        }
        hit.degree = a.degree();
        out->push_back(std::move(hit));
    }

    // avals/svals: products of prime^e values and sigma**(prime^e) values at
    // the four field points for everything on the stack.
    void descend(std::size_t next_idx, int budget, std::array<Gf4, 4> avals,
                 std::array<Gf4, 4> svals) {
        const auto& pool = *ctx->pool;
        const auto& w = ctx->omega_filter;
        const int size = static_cast<int>(stack.size());
        if (w && size == *w) return;
        if (w && budget < (*w - size)) return; // each missing prime costs >= 1
        for (std::size_t idx = next_idx; idx < pool.size(); ++idx) {
            const auto& pp = pool[idx];
            if (pp.degree > budget) break; // pool sorted by degree
            std::array<Gf4, 4> pe = pp.eval;
            for (int e = 1; e * pp.degree <= budget; ++e) {
                if (e > 1)
                    for (std::size_t j = 0; j < 4; ++j) pe[j] *= pp.eval[j];
                std::array<Gf4, 4> ca, cs;
                bool agree = true;
                for (std::size_t j = 0; j < 4; ++j) {
                    ca[j] = avals[j] * pe[j];
                    cs[j] = svals[j] * sigma_eval(pp.eval[j], e, SigmaKind::Biunitary);
                    if (ca[j] != cs[j]) agree = false;
                }
                stack.emplace_back(idx, e);
                if (!w || size + 1 == *w) {
                    ++local_candidates;
                    if (agree) full_check();
                }
                descend(idx + 1, budget - e * pp.degree, ca, cs);
                stack.pop_back();
            }
        }
    }
};

} // namespace

SearchReport search_general_bup(int max_degree, std::optional<int> omega_filter,
                                const SearchLimits& limits) {
    const auto start = Clock::now();
    if (max_degree < 1) throw std::domain_error("search_general_bup: max_degree must be >= 1");
    if (max_degree > limits.general_degree_cap)
        throw cap_error("search_general_bup: max_degree above configured cap");
    if (omega_filter && *omega_filter < 1)
        throw std::domain_error("search_general_bup: omega filter must be >= 1");

    std::vector<PoolPrime> pool;
    const int max_prime_degree =
        omega_filter ? max_degree - (*omega_filter - 1) : max_degree;
    for (int d = 1; d <= max_prime_degree; ++d)
        for (const Poly& p : irreducibles_of_degree(d)) {
            PoolPrime pp{p, d, {}};
            for (std::size_t j = 0; j < 4; ++j) pp.eval[j] = p(gf4_elements[j]);
            pool.push_back(std::move(pp));
        }

    // chunk tasks over the first prime choice
    const std::size_t chunk_size = 512;
    const int n_chunks = static_cast<int>((pool.size() + chunk_size - 1) / chunk_size);
    std::vector<std::vector<SearchHit>> chunk_hits(static_cast<std::size_t>(n_chunks));
    GeneralScanContext ctx{&pool, omega_filter};

    std::atomic<std::uint64_t> total_candidates{0};
    std::atomic<bool> over_cap{false};
    const int threads = std::max(1, limits.threads);
    std::vector<GeneralWorker> workers(static_cast<std::size_t>(threads));

    run_items(n_chunks, threads, [&](int chunk, int wid) {
        if (over_cap.load(std::memory_order_relaxed))
            throw cap_error("search: candidate count exceeds cap");
        auto& worker = workers[static_cast<std::size_t>(wid)];
        worker.ctx = &ctx;
        worker.out = &chunk_hits[static_cast<std::size_t>(chunk)];
        worker.local_candidates = 0;
        const std::size_t lo = static_cast<std::size_t>(chunk) * chunk_size;
        const std::size_t hi = std::min(pool.size(), lo + chunk_size);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const auto& pp = pool[idx];
            if (pp.degree > max_degree) break;
            std::array<Gf4, 4> pe = pp.eval;
            for (int e = 1; e * pp.degree <= max_degree; ++e) {
                if (e > 1)
                    for (std::size_t j = 0; j < 4; ++j) pe[j] *= pp.eval[j];
                std::array<Gf4, 4> ca, cs;
                bool agree = true;
                for (std::size_t j = 0; j < 4; ++j) {
                    ca[j] = pe[j];
                    cs[j] = sigma_eval(pp.eval[j], e, SigmaKind::Biunitary);
                    if (ca[j] != cs[j]) agree = false;
                }
                worker.stack.emplace_back(idx, e);
                if (!omega_filter || *omega_filter == 1) {
                    ++worker.local_candidates;
                    if (agree) worker.full_check();
                }
                worker.descend(idx + 1, max_degree - e * pp.degree, ca, cs);
                worker.stack.pop_back();
            }
        }
        const std::uint64_t seen =
            total_candidates.fetch_add(worker.local_candidates, std::memory_order_relaxed) +
            worker.local_candidates;
        if (seen > limits.max_candidates) {
            over_cap.store(true, std::memory_order_relaxed);
            throw cap_error("search: candidate count exceeds cap");
        }
    });

    SearchReport report;
    report.search = "general";
    report.bounds.push_back({"max_degree", {max_degree}, false});
    if (omega_filter) report.bounds.push_back({"omega", {*omega_filter}, false});
    for (auto& slot : chunk_hits)
        report.hits.insert(report.hits.end(), slot.begin(), slot.end());
    std::sort(report.hits.begin(), report.hits.end(), hit_less);
    report.candidates = total_candidates.load();
    report.elapsed_ms = ms_since(start);
    return report;
}

namespace {

std::vector<ExponentTuple> hits_to_tuples(const std::vector<SearchHit>& hits) {
    std::vector<ExponentTuple> out;
    for (const auto& h : hits) {
        ExponentTuple t{};
        for (std::size_t i = 0; i < 4 && i < h.exps.size(); ++i) t.e[i] = h.exps[i];
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ExponentTuple> in_box(const std::vector<ExponentTuple>& ts, int max_exp) {
    std::vector<ExponentTuple> out;
    for (const auto& t : ts) {
        bool ok = true;
        for (int v : t.e)
            if (v < 1 || v > max_exp) ok = false;
        if (ok) out.push_back(t);
    }
    return out;
}

std::vector<SearchHit> tuples_to_hits(const std::vector<ExponentTuple>& ts,
                                      const std::array<Poly, 4>& base) {
    std::vector<SearchHit> out;
    for (const auto& t : ts) out.push_back(make_hit(base, t));
    return out;
}

void diff_sets(const std::vector<ExponentTuple>& expected, const std::vector<ExponentTuple>& got,
               const std::array<Poly, 4>& base, std::vector<SearchHit>& missing,
               std::vector<SearchHit>& extra) {
    std::vector<ExponentTuple> m, x;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                        std::back_inserter(m));
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                        std::back_inserter(x));
    auto mh = tuples_to_hits(m, base), xh = tuples_to_hits(x, base);
    missing.insert(missing.end(), mh.begin(), mh.end());
    extra.insert(extra.end(), xh.begin(), xh.end());
}

int family_param_bound(int max_exp) {
    int n = 0;
    while (((1LL << n) - 1) <= max_exp) ++n;
    return n;
}

} // namespace

TheoremCheck verify_theorem(TheoremId id, const VerifyOptions& opts) {
    TheoremCheck check;
    switch (id) {
        case TheoremId::SplittingBup:
        case TheoremId::SplittingPerfect: {
            const bool bup = id == TheoremId::SplittingBup;
            check.report = bup ? search_splitting_bup(opts.max_exp, opts.limits)
                               : search_perfect_splitting(opts.max_exp, opts.limits);
            const int pb = family_param_bound(opts.max_exp);
            std::vector<ExponentTuple> listed;
            const auto ids = bup ? std::vector<FamilyId>{FamilyId::SplitBupAllTwos, FamilyId::SplitBupTailMersenne,
                                                         FamilyId::SplitBupHeadMersenne, FamilyId::SplitBupSporadic}
                                 : std::vector<FamilyId>{FamilyId::PerfectMersennePairs, FamilyId::PerfectEqualExponents,
                                                         FamilyId::PerfectAlternating, FamilyId::PerfectStaggered};
            for (FamilyId fid : ids) {
                auto fam = family_exponents(fid, pb);
                listed.insert(listed.end(), fam.begin(), fam.end());
            }
            std::sort(listed.begin(), listed.end());
            listed.erase(std::unique(listed.begin(), listed.end()), listed.end());
            listed = in_box(listed, opts.max_exp);
            const auto expected = in_box(orbit_closure(listed), opts.max_exp);
            const auto got = hits_to_tuples(check.report.hits);
            diff_sets(expected, got, splitting_base(), check.missing, check.extra);
            diff_sets(listed, got, splitting_base(), check.raw_missing, check.raw_extra);
            check.ok = check.missing.empty() && check.extra.empty();
            return check;
        }
        case TheoremId::NonsplittingBup: {
            std::vector<Poly> p_list = opts.p_list;
            if (p_list.empty()) p_list.push_back(Poly::x());
            const auto sets = opts.raw_exponents ? NonsplitExponentSets::raw()
                                                 : NonsplitExponentSets::curated();
            check.report = search_nonsplit_bup(p_list, sets, opts.limits);
            const auto expected = family_exponents(FamilyId::NonsplitBupSporadic, 0);
            for (const Poly& p : p_list) {
                const auto base = omega2_base(p);
                std::vector<SearchHit> base_hits;
                for (const auto& h : check.report.hits)
                    if (!h.base.empty() && h.base[0] == p) base_hits.push_back(h);
                const auto got = hits_to_tuples(base_hits);
                diff_sets(expected, got, base, check.missing, check.extra);
            }
            check.ok = check.missing.empty() && check.extra.empty();
            return check;
        }
    }
    throw std::logic_error("verify_theorem: bad theorem id");
}

std::string report_to_json(const SearchReport& r) {
    nlohmann::ordered_json j;
    j["search"] = r.search;
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    for (const auto& b : r.bounds) {
        if (b.is_list)
            bounds[b.key] = b.values;
        else
            bounds[b.key] = b.values.empty() ? 0 : b.values.front();
    }
    j["bounds"] = bounds;
    auto hit_array = [](const std::vector<SearchHit>& hits) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& h : hits) {
            nlohmann::ordered_json jh;
            jh["base"] = nlohmann::ordered_json::array();
            for (const auto& p : h.base) jh["base"].push_back(p.str());
            jh["exps"] = h.exps;
            jh["degree"] = h.degree;
            arr.push_back(std::move(jh));
        }
        return arr;
    };
    j["hits"] = hit_array(r.hits);
    if (r.search == "nonsplit-bup") j["decomposable_hits"] = hit_array(r.decomposable_hits);
    j["candidates"] = r.candidates;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump();
}

namespace {

std::string hit_line(const SearchHit& h) {
    std::ostringstream os;
    os << "base=(";
    for (std::size_t i = 0; i < h.base.size(); ++i) {
        if (i != 0) os << ", ";
        os << h.base[i];
    }
    os << ") exps=(";
    for (std::size_t i = 0; i < h.exps.size(); ++i) {
        if (i != 0) os << ",";
        os << h.exps[i];
    }
    os << ") degree=" << h.degree;
    return os.str();
}

} // namespace

std::string report_to_text(const SearchReport& r) {
    std::ostringstream os;
    os << "search: " << r.search << "\n";
    os << "bounds:";
    for (const auto& b : r.bounds) {
        os << " " << b.key << "=";
        if (b.is_list) {
            os << "[";
            for (std::size_t i = 0; i < b.values.size(); ++i) {
                if (i != 0) os << ",";
                os << b.values[i];
            }
            os << "]";
        } else {
            os << (b.values.empty() ? 0 : b.values.front());
        }
    }
    os << "\n";
    os << "candidates: " << r.candidates << "\n";
    os << "hits: " << r.hits.size() << "\n";

    const bool uniform_splitting =
        !r.hits.empty() &&
        std::all_of(r.hits.begin(), r.hits.end(), [&](const SearchHit& h) {
            return h.base.size() == 4 &&
                   std::equal(h.base.begin(), h.base.end(), splitting_base().begin());
        });
    if (uniform_splitting) {
        os << "base: x, x+1, x+a, x+a1\n";
        os << "   a   b   c   d  degree\n";
        for (const auto& h : r.hits) {
            for (int e : h.exps) {
                std::string s = std::to_string(e);
                os << std::string(4 - std::min<std::size_t>(4, s.size()), ' ') << s;
            }
            std::string d = std::to_string(h.degree);
            os << std::string(8 - std::min<std::size_t>(8, d.size()), ' ') << d << "\n";
        }
    } else {
        for (const auto& h : r.hits) os << hit_line(h) << "\n";
    }
    if (r.search == "nonsplit-bup") {
        os << "decomposable_hits: " << r.decomposable_hits.size() << "\n";
        for (const auto& h : r.decomposable_hits) os << hit_line(h) << "\n";
    }
    return os.str();
}

} // namespace bup4
