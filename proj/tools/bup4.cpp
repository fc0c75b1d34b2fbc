// Command-line front end: sigma, check, search, omega, tables, factor.
// Exit codes: 0 success, 1 well-formed query with a negative answer,
// 2 usage or parse error, 3 computation error (caps, domain violations).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bup4/classify.hpp"
#include "bup4/errors.hpp"
#include "bup4/factor.hpp"
#include "bup4/omega_sets.hpp"
#include "bup4/poly.hpp"
#include "bup4/sigma.hpp"

using namespace bup4;

namespace {

constexpr int kMaxInputDegree = 100'000;

// Extended input grammar: juxtaposed factors, parenthesized polynomials with
// an optional '^exp', multiplied together. Inputs without parentheses go
// straight through the plain polynomial grammar.
Poly parse_input(const std::string& s) {
    if (s.find('(') == std::string::npos) return poly_parse(s);
    Poly acc = Poly::one();
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto parse_exp = [&]() -> unsigned {
        skip_ws();
        if (i >= s.size() || s[i] != '^') return 1;
        ++i;
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error("expected an exponent", i);
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > kMaxInputDegree) throw parse_error("exponent too large", i);
            ++i;
        }
        return static_cast<unsigned>(v);
    };
    long long degree_budget = 0;
    while (skip_ws(), i < s.size()) {
        Poly factor;
        if (s[i] == '(') {
            const std::size_t close = s.find(')', i);
            if (close == std::string::npos) throw parse_error("missing ')'", i);
            factor = poly_parse(s.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            const std::size_t next = std::min(s.find('(', i), s.size());
            factor = poly_parse(s.substr(i, next - i));
            i = next;
            degree_budget += factor.degree();
            if (degree_budget > kMaxInputDegree) throw cap_error("input degree above cap");
            acc *= factor;
            continue; // plain chunks carry their own exponents
        }
        const unsigned e = parse_exp();
        degree_budget += static_cast<long long>(factor.degree()) * e;
        if (degree_budget > kMaxInputDegree) throw cap_error("input degree above cap");
        acc *= pow(factor, e);
    }
    return acc;
}

// (x+1)^8 (x^3+x+1) (x^3+x^2+1); single-term factors such as x stay bare.
std::string factored_text(const Factorization& f) {
    if (f.empty()) return "1";
    std::string out;
    for (const auto& p : f.parts()) {
        if (!out.empty()) out += ' ';
        int terms = 0;
        for (int i = 0; i <= p.prime.degree(); ++i)
            if (!p.prime.coeff(i).is_zero()) ++terms;
        if (terms > 1)
            out += '(' + p.prime.str() + ')';
        else
            out += p.prime.str();
        if (p.exp > 1) out += '^' + std::to_string(p.exp);
    }
    return out;
}

SigmaKind kind_of(const std::string& name) {
    if (name == "all") return SigmaKind::All;
    if (name == "unitary") return SigmaKind::Unitary;
    return SigmaKind::Biunitary;
}

int env_threads() {
    if (const char* v = std::getenv("BUP4_THREADS")) {
        const int n = std::atoi(v);
        if (n >= 1) return n;
    }
    return 1;
}

struct CommonOpts {
    int threads = env_threads();
    std::uint64_t max_candidates = SearchLimits{}.max_candidates;
    std::uint64_t max_divisors = SearchLimits{}.max_divisors;
    bool timing = false;

    SearchLimits limits() const {
        SearchLimits l;
        l.threads = threads;
        l.max_candidates = max_candidates;
        l.max_divisors = max_divisors;
        return l;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--threads", o.threads, "worker threads (env BUP4_THREADS)");
    cmd->add_option("--max-candidates", o.max_candidates, "search candidate cap");
    cmd->add_option("--max-divisors", o.max_divisors, "divisor enumeration cap");
    cmd->add_flag("--timing", o.timing, "include measured elapsed_ms in reports");
}

int cmd_sigma(const std::string& poly_text, const std::string& kind, bool factored) {
    const Poly s = parse_input(poly_text);
    const Poly v = sigma(s, kind_of(kind));
    if (factored)
        std::cout << factored_text(factorize(v)) << "\n";
    else
        std::cout << v << "\n";
    return 0;
}

int cmd_check(const std::string& poly_text, const std::string& kind, bool indecomposable,
              const CommonOpts& opts) {
    const Poly s = parse_input(poly_text);
    if (s.is_zero() || !s.is_monic()) throw std::domain_error("check: input must be monic and nonzero");
    const Factorization fact = factorize(s);
    const SigmaKind k = kind_of(kind);
    const bool perfect = sigma(fact, k) == s;
    std::cout << "input: " << factored_text(fact) << "\n";
    std::cout << "omega: " << fact.omega() << "\n";
    std::cout << "perfect(" << kind << "): " << (perfect ? "yes" : "no") << "\n";
    bool ok = perfect;
    if (indecomposable) {
        const bool indec = perfect && is_indecomposable_bup(fact, opts.max_divisors);
        std::cout << "indecomposable: " << (indec ? "yes" : "no") << "\n";
        ok = ok && indec;
    }
    return ok ? 0 : 1;
}

void print_report(SearchReport report, bool json, bool timing) {
    if (!timing) report.elapsed_ms = 0;
    if (json)
        std::cout << report_to_json(report) << "\n";
    else
        std::cout << report_to_text(report);
}

int cmd_search(const std::string& mode, int max_exp, int max_degree, std::optional<int> omega,
               const std::vector<std::string>& bases, bool raw, bool json,
               const CommonOpts& opts) {
    SearchReport report;
    if (mode == "split-bup") {
        report = search_splitting_bup(max_exp, opts.limits());
    } else if (mode == "split-perfect") {
        report = search_perfect_splitting(max_exp, opts.limits());
    } else if (mode == "nonsplit-bup") {
        std::vector<Poly> p_list;
        for (const auto& b : bases) p_list.push_back(parse_input(b));
        if (p_list.empty()) p_list.push_back(Poly::x());
        const auto sets =
            raw ? NonsplitExponentSets::raw() : NonsplitExponentSets::curated();
        report = search_nonsplit_bup(p_list, sets, opts.limits());
    } else { // general
        report = search_general_bup(max_degree, omega, opts.limits());
    }
    print_report(std::move(report), json, opts.timing);
    return 0;
}

int cmd_omega(int set, std::optional<int> max_degree, std::optional<int> pk) {
    if (pk) {
        const Poly p = pk_family(*pk);
        const bool member = in_omega2(p);
        std::cout << p << "  " << (member ? "IN_OMEGA2" : "NOT_IN_OMEGA2") << "\n";
        return member ? 0 : 1;
    }
    if (!max_degree) throw CLI::ValidationError("omega", "need --pk or --max-degree");
    for (const Poly& p : enumerate_omega(*max_degree, set)) std::cout << p << "\n";
    return 0;
}

// sigma** of base_index^e over the Omega_2 base of x, as exponents of
// (P,Q,R,S); throws when the value leaves the base's span.
std::array<int, 4> table_vector(int base_index, int e) {
    const auto base = omega2_base(Poly::x());
    Poly v = sigma_prime_power(base[static_cast<std::size_t>(base_index)], e,
                               SigmaKind::Biunitary, false);
    std::array<int, 4> exps{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (;;) {
            auto [q, r] = divrem(v, base[i]);
            if (!r.is_zero()) break;
            v = std::move(q);
            ++exps[i];
        }
    }
    if (!v.is_one()) throw std::runtime_error("tables: value left the P,Q,R,S span");
    return exps;
}

void require_row(int base_index, int e, const std::array<int, 4>& want) {
    if (table_vector(base_index, e) != want)
        throw std::runtime_error("tables: computed sigma** row disagrees with the family pattern");
}

int cmd_tables(const CommonOpts& opts) {
    // Table 1: split-bup hits at max_exp 6 that are not family i-iii members
    const auto report = search_splitting_bup(6, opts.limits());
    std::vector<ExponentTuple> family;
    for (FamilyId id : {FamilyId::SplitBupAllTwos, FamilyId::SplitBupTailMersenne, FamilyId::SplitBupHeadMersenne}) {
        for (const auto& t : family_exponents(id, 3)) {
            const auto orbit = symmetry_orbit(t);
            family.insert(family.end(), orbit.begin(), orbit.end());
        }
    }
    std::vector<ExponentTuple> sporadic;
    for (const auto& h : report.hits) {
        ExponentTuple t{{h.exps[0], h.exps[1], h.exps[2], h.exps[3]}};
        bool in_family = false;
        for (const auto& f : family)
            if (f == t) in_family = true;
        if (!in_family) sporadic.push_back(t);
    }
    std::sort(sporadic.begin(), sporadic.end());

    const auto predicted = orbit_closure(family_exponents(FamilyId::SplitBupSporadic, 0));
    if (sporadic != predicted)
        throw std::runtime_error("tables: computed sporadic set disagrees with the theorem table");

    std::cout << "table 1 (split-bup exponents outside families i-iii, orbit closure):\n";
    const char* row_names = "abcd";
    for (int row = 0; row < 4; ++row) {
        std::cout << row_names[row] << " |";
        for (const auto& t : sporadic) std::cout << ' ' << t.e[static_cast<std::size_t>(row)];
        std::cout << "\n";
    }

    // Tables 3 and 4: sigma** of prime powers over the Omega_2 base, verified
    // against the closed patterns before printing the symbolic rows.
    require_row(0, 2, {0, 2, 0, 0});
    require_row(0, 14, {0, 8, 1, 1});
    for (int r = 1; r <= 6; ++r) require_row(0, (1 << r) - 1, {0, (1 << r) - 1, 0, 0});
    for (int r = 1; r <= 3; ++r)
        require_row(0, 7 * (1 << r) - 1, {0, (1 << r) - 1, 1 << r, 1 << r});
    require_row(1, 2, {2, 0, 0, 0});
    require_row(1, 14, {8, 0, 1, 1});
    for (int s = 1; s <= 6; ++s) require_row(1, (1 << s) - 1, {(1 << s) - 1, 0, 0, 0});
    for (int s = 1; s <= 3; ++s)
        require_row(1, 7 * (1 << s) - 1, {(1 << s) - 1, 0, 1 << s, 1 << s});
    require_row(2, 2, {2, 4, 0, 0});
    for (int e = 1; e <= 3; ++e)
        require_row(2, (1 << e) - 1, {(1 << e) - 1, 2 * ((1 << e) - 1), 0, 0});
    require_row(3, 2, {4, 2, 0, 0});
    for (int f = 1; f <= 3; ++f)
        require_row(3, (1 << f) - 1, {2 * ((1 << f) - 1), (1 << f) - 1, 0, 0});

    std::cout << "table 3 (sigma** of P^h and Q^k over P, Q=P+1, R=P^3+P+1, S=P^3+P^2+1):\n";
    std::cout << "  h=2          Q^2\n";
    std::cout << "  h=14         Q^8 R S\n";
    std::cout << "  h=2^r-1      Q^(2^r-1)\n";
    std::cout << "  h=7*2^r-1    Q^(2^r-1) R^(2^r) S^(2^r)\n";
    std::cout << "  k=2          P^2\n";
    std::cout << "  k=14         P^8 R S\n";
    std::cout << "  k=2^s-1      P^(2^s-1)\n";
    std::cout << "  k=7*2^s-1    P^(2^s-1) R^(2^s) S^(2^s)\n";
    std::cout << "table 4 (sigma** of R^l and S^t):\n";
    std::cout << "  l=2          P^2 Q^4\n";
    std::cout << "  l=2^e-1      P^(2^e-1) Q^(2*(2^e-1))\n";
    std::cout << "  t=2          P^4 Q^2\n";
    std::cout << "  t=2^f-1      P^(2*(2^f-1)) Q^(2^f-1)\n";
    return 0;
}

int cmd_factor(const std::string& poly_text, bool json) {
    const Poly f = parse_input(poly_text);
    const Factorization fact = factorize(f);
    if (json)
        std::cout << factorization_to_json(fact) << "\n";
    else
        std::cout << factored_text(fact) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisor-sum functions and bi-unitary perfect polynomials over F_4"};
    app.require_subcommand(1);

    std::string poly_text, kind = "biunitary", mode;
    bool factored = false, indecomposable = false, json = false, raw = false;
    int max_exp = 6, max_degree = 8, set = 2;
    std::optional<int> omega_filter, omega_max_degree, pk;
    std::vector<std::string> bases;
    CommonOpts common;

    auto* sigma_cmd = app.add_subcommand("sigma", "print the selected divisor sum");
    sigma_cmd->add_option("poly", poly_text, "polynomial (factored input accepted)")->required();
    sigma_cmd->add_option("--kind", kind, "all|unitary|biunitary")
        ->check(CLI::IsMember({"all", "unitary", "biunitary"}));
    sigma_cmd->add_flag("--factored", factored, "print the factorization of the value");

    auto* check_cmd = app.add_subcommand("check", "test a polynomial for perfection");
    check_cmd->add_option("poly", poly_text)->required();
    check_cmd->add_option("--kind", kind, "all|unitary|biunitary")
        ->check(CLI::IsMember({"all", "unitary", "biunitary"}));
    check_cmd->add_flag("--indecomposable", indecomposable,
                        "additionally require indecomposability (biunitary only)");
    add_common(check_cmd, common);

    auto* search_cmd = app.add_subcommand("search", "run one of the classification searches");
    search_cmd->add_option("--mode", mode, "split-bup|nonsplit-bup|split-perfect|general")
        ->required()
        ->check(CLI::IsMember({"split-bup", "nonsplit-bup", "split-perfect", "general"}));
    search_cmd->add_option("--max-exp", max_exp, "exponent box bound for the splitting scans");
    search_cmd->add_option("--max-degree", max_degree, "degree budget for the general scan");
    search_cmd->add_option("--omega", omega_filter, "restrict the general scan to this omega");
    search_cmd->add_option("--base", bases, "Omega_2 base polynomial(s) for nonsplit-bup");
    search_cmd->add_flag("--raw", raw, "nonsplit-bup: scan raw exponent ranges");
    search_cmd->add_flag("--json", json, "emit the report as JSON");
    add_common(search_cmd, common);

    auto* omega_cmd = app.add_subcommand("omega", "Omega_1 / Omega_2 membership and enumeration");
    omega_cmd->add_option("--set", set, "1 or 2")->check(CLI::IsMember({1, 2}));
    omega_cmd->add_option("--max-degree", omega_max_degree, "list members up to this degree")
        ->check(CLI::NonNegativeNumber);
    omega_cmd->add_option("--pk", pk, "print x^(2*5^k)+x^(5^k)+a and its membership")
        ->check(CLI::NonNegativeNumber);

    auto* tables_cmd = app.add_subcommand("tables", "recompute the classification tables");
    add_common(tables_cmd, common);

    auto* factor_cmd = app.add_subcommand("factor", "factor a polynomial");
    factor_cmd->add_option("poly", poly_text)->required();
    factor_cmd->add_flag("--json", json, "emit the factorization as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sigma_cmd->parsed()) return cmd_sigma(poly_text, kind, factored);
        if (check_cmd->parsed()) {
            if (indecomposable && kind != "biunitary") {
                std::cerr << "error: --indecomposable requires --kind biunitary\n";
                return 2;
            }
            return cmd_check(poly_text, kind, indecomposable, common);
        }
        if (search_cmd->parsed())
            return cmd_search(mode, max_exp, max_degree, omega_filter, bases, raw, json, common);
        if (omega_cmd->parsed()) return cmd_omega(set, omega_max_degree, pk);
        if (tables_cmd->parsed()) return cmd_tables(common);
        if (factor_cmd->parsed()) return cmd_factor(poly_text, json);
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
