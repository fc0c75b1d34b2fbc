#include "bup4/sigma.hpp"

#include <stdexcept>
#include <utility>

#include "bup4/errors.hpp"

namespace bup4 {

namespace {

// 1 + p + ... + p^n
Poly geometric_sigma(const Poly& p, int n) {
    Poly acc = Poly::one();
    for (int i = 0; i < n; ++i) {
        acc *= p;
        acc += Poly::one();
    }
    return acc;
}

void check_monic_nonzero(const Poly& s, const char* who) {
    if (s.is_zero()) throw std::domain_error(std::string(who) + ": zero polynomial");
    if (!s.is_monic()) throw std::domain_error(std::string(who) + ": input must be monic");
}

std::uint64_t checked_divisor_count(const Factorization& fs, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (const auto& p : fs.parts()) {
        const std::uint64_t n = static_cast<std::uint64_t>(p.exp) + 1;
        if (count > cap / n) throw cap_error("divisor count exceeds cap");
        count *= n;
    }
    if (count > cap) throw cap_error("divisor count exceeds cap");
    return count;
}

} // namespace

Poly sigma_prime_power(const Poly& p, int e, SigmaKind kind, bool check_irreducible) {
    if (e < 1) throw std::domain_error("sigma_prime_power: exponent must be >= 1");
    if (check_irreducible && !is_irreducible(p))
        throw std::domain_error("sigma_prime_power: base must be irreducible");
    switch (kind) {
        case SigmaKind::All:
            return geometric_sigma(p, e);
        case SigmaKind::Unitary:
            return Poly::one() + pow(p, static_cast<unsigned>(e));
        case SigmaKind::Biunitary:
            if (e % 2 != 0) return geometric_sigma(p, e);
            return (Poly::one() + p) * geometric_sigma(p, e / 2) * geometric_sigma(p, e / 2 - 1);
    }
    throw std::logic_error("sigma_prime_power: bad kind");
}

Poly sigma(const Factorization& fs, SigmaKind kind) {
    Poly acc = Poly::one();
    for (const auto& p : fs.parts())
        acc *= sigma_prime_power(p.prime, p.exp, kind, /*check_irreducible=*/false);
    return acc;
}

Poly sigma(const Poly& s, SigmaKind kind) {
    check_monic_nonzero(s, "sigma");
    return sigma(factorize(s), kind);
}

Poly gcd_unitary(const Poly& a, const Poly& b) {
    check_monic_nonzero(a, "gcd_unitary");
    check_monic_nonzero(b, "gcd_unitary");
    const Factorization fa = factorize(a);
    const Factorization fb = factorize(b);
    Poly acc = Poly::one();
    auto ib = fb.parts().begin();
    for (const auto& pa : fa.parts()) {
        while (ib != fb.parts().end() && canonical_less(ib->prime, pa.prime)) ++ib;
        if (ib != fb.parts().end() && ib->prime == pa.prime && ib->exp == pa.exp)
            acc *= pow(pa.prime, static_cast<unsigned>(pa.exp));
    }
    return acc;
}

DivisorRange::DivisorRange(const Poly& s, std::uint64_t cap)
    : DivisorRange((check_monic_nonzero(s, "divisors"), factorize(s)), cap) {}

DivisorRange::DivisorRange(Factorization fs, std::uint64_t cap) : fs_(std::move(fs)) {
    count_ = checked_divisor_count(fs_, cap);
    powers_.reserve(fs_.size());
    for (const auto& p : fs_.parts()) {
        std::vector<Poly> pw;
        pw.reserve(static_cast<std::size_t>(p.exp) + 1);
        pw.push_back(Poly::one());
        for (int k = 1; k <= p.exp; ++k) pw.push_back(pw.back() * p.prime);
        powers_.push_back(std::move(pw));
    }
}

DivisorRange::iterator::iterator(const DivisorRange* range, std::uint64_t pos)
    : range_(range), pos_(pos) {
    if (range_ == nullptr) return;
    exps_.assign(range_->fs_.size(), 0);
    suffix_.assign(range_->fs_.size() + 1, Poly::one());
    rebuild(range_->fs_.size());
    current_ = suffix_.empty() ? Poly::one() : suffix_.front();
}

void DivisorRange::iterator::rebuild(std::size_t from) {
    for (std::size_t i = from; i-- > 0;)
        suffix_[i] = range_->powers_[i][static_cast<std::size_t>(exps_[i])] * suffix_[i + 1];
}

DivisorRange::iterator& DivisorRange::iterator::operator++() {
    ++pos_;
    std::size_t i = 0;
    while (i < exps_.size()) {
        if (exps_[i] < range_->fs_.parts()[i].exp) {
            ++exps_[i];
            rebuild(i + 1);
            current_ = suffix_.front();
            return *this;
        }
        exps_[i] = 0;
        ++i;
    }
    // past the last divisor; pos_ now equals count_ and matches end()
    return *this;
}

std::vector<Poly> divisors(const Poly& s, std::uint64_t cap) {
    std::vector<Poly> out;
    DivisorRange range(s, cap);
    out.reserve(static_cast<std::size_t>(range.size()));
    for (const Poly& d : range) out.push_back(d);
    return out;
}

bool is_biunitary_divisor(const Poly& d, const Poly& s) {
    check_monic_nonzero(d, "is_biunitary_divisor");
    check_monic_nonzero(s, "is_biunitary_divisor");
    auto [q, r] = divrem(s, d);
    if (!r.is_zero()) throw std::domain_error("is_biunitary_divisor: d does not divide s");
    return gcd_unitary(d, q).is_one();
}

Poly sigma_bruteforce(const Poly& s, SigmaKind kind, std::uint64_t cap) {
    check_monic_nonzero(s, "sigma_bruteforce");
    Poly acc;
    for (const Poly& d : DivisorRange(s, cap)) {
        switch (kind) {
            case SigmaKind::All:
                acc += d;
                break;
            case SigmaKind::Unitary:
                if (gcd(d, s / d).is_one()) acc += d;
                break;
            case SigmaKind::Biunitary:
                if (is_biunitary_divisor(d, s)) acc += d;
                break;
        }
    }
    return acc;
}

bool is_perfect(const Poly& s, SigmaKind kind) { return sigma(s, kind) == s; }

bool is_indecomposable_bup(const Poly& s, std::uint64_t cap) {
    check_monic_nonzero(s, "is_indecomposable_bup");
    return is_indecomposable_bup(factorize(s), cap);
}

bool is_indecomposable_bup(const Factorization& fs, std::uint64_t cap) {
    if (sigma(fs, SigmaKind::Biunitary) != fs.product())
        throw std::domain_error("is_indecomposable_bup: input is not bi-unitary perfect");
    const std::size_t m = fs.size();
    if (m >= 63 || (std::uint64_t{1} << m) > cap)
        throw cap_error("is_indecomposable_bup: block count exceeds cap");

    std::vector<Poly> pw(m), sig(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& [prime, exp] = fs.parts()[i];
        pw[i] = pow(prime, static_cast<unsigned>(exp));
        sig[i] = sigma_prime_power(prime, exp, SigmaKind::Biunitary, false);
    }

    // a decomposition splits s into coprime blocks of full prime powers, so the
    // candidates are the unitary divisors strictly between 1 and s
    const std::uint64_t blocks = std::uint64_t{1} << m;
    for (std::uint64_t mask = 1; mask + 1 < blocks; ++mask) {
        Poly d = Poly::one(), sd = Poly::one();
        for (std::size_t j = 0; j < m; ++j) {
            if ((mask >> j) & 1u) {
                d *= pw[j];
                sd *= sig[j];
            }
        }
        if (d == sd) return false;
    }
    return true;
}

bool splits(const Poly& s) {
    check_monic_nonzero(s, "splits");
    const Factorization fs = factorize(s);
    for (const auto& p : fs.parts())
        if (p.prime.degree() != 1) return false;
    return true;
}

} // namespace bup4
