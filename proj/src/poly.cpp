#include "bup4/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

#include "bup4/errors.hpp"

namespace bup4 {

namespace {

// mul_row[c] is the multiplication table row for code c, handy in inner loops.
constexpr std::uint8_t mul_code(std::uint8_t a, std::uint8_t b) noexcept {
    constexpr std::uint8_t t[4][4] = {
        {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return t[a][b];
}

} // namespace

Poly::Poly(Gf4 constant) {
    if (!constant.is_zero()) c_.push_back(constant.code());
}

Poly::Poly(std::initializer_list<std::uint8_t> codes) {
    for (std::uint8_t c : codes) {
        if (c > 3) throw std::domain_error("Poly: coefficient code out of range");
        c_.push_back(c);
    }
    trim();
}

Poly Poly::monomial(int degree, Gf4 coeff) {
    if (degree < 0) throw std::domain_error("Poly::monomial: negative degree");
    Poly f;
    if (coeff.is_zero()) return f;
    f.c_.assign(static_cast<std::size_t>(degree) + 1, 0);
    f.c_.back() = coeff.code();
    return f;
}

Poly Poly::from_codes(std::vector<std::uint8_t> codes) {
    Poly f;
    for (std::uint8_t c : codes)
        if (c > 3) throw std::domain_error("Poly: coefficient code out of range");
    f.c_ = std::move(codes);
    f.trim();
    return f;
}

void Poly::trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Gf4 Poly::coeff(int i) const noexcept {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Gf4::zero();
    return Gf4(c_[static_cast<std::size_t>(i)]);
}

Gf4 Poly::leading() const {
    if (c_.empty()) throw std::domain_error("Poly: leading coefficient of zero");
    return Gf4(c_.back());
}

Poly Poly::operator+(const Poly& rhs) const {
    const Poly& lo = c_.size() <= rhs.c_.size() ? *this : rhs;
    const Poly& hi = c_.size() <= rhs.c_.size() ? rhs : *this;
    Poly r = hi;
    for (std::size_t i = 0; i < lo.c_.size(); ++i) r.c_[i] ^= lo.c_[i];
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& rhs) const {
    if (is_zero() || rhs.is_zero()) return Poly();
    Poly r;
    r.c_.assign(c_.size() + rhs.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::uint8_t a = c_[i];
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            r.c_[i + j] ^= mul_code(a, rhs.c_[j]);
    }
    return r; // leading product of nonzero leadings is nonzero, no trim needed
}

Poly Poly::operator*(Gf4 s) const {
    if (s.is_zero()) return Poly();
    Poly r = *this;
    for (auto& c : r.c_) c = mul_code(c, s.code());
    return r;
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (f.degree() < g.degree()) return {Poly(), f};
    const int dg = g.degree();
    const std::uint8_t inv = g.leading().inverse().code();
    Poly q, r = f;
    q.c_.assign(static_cast<std::size_t>(f.degree() - dg) + 1, 0);
    for (int k = f.degree(); k >= dg; --k) {
        const std::uint8_t rk = r.c_[static_cast<std::size_t>(k)];
        if (rk == 0) continue;
        const std::uint8_t c = mul_code(rk, inv);
        q.c_[static_cast<std::size_t>(k - dg)] = c;
        for (int j = 0; j <= dg; ++j)
            r.c_[static_cast<std::size_t>(k - dg + j)] ^= mul_code(c, g.c_[static_cast<std::size_t>(j)]);
    }
    q.trim();
    r.trim();
    return {q, r};
}

bool divides(const Poly& d, const Poly& f) {
    return divrem(f, d).second.is_zero();
}

Gf4 Poly::operator()(Gf4 point) const noexcept {
    Gf4 acc = Gf4::zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * point + Gf4(c_[i]);
    return acc;
}

Poly Poly::squared() const {
    Poly r;
    if (is_zero()) return r;
    r.c_.assign(2 * c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[2 * i] = Gf4(c_[i]).square().code();
    return r;
}

Poly Poly::monic() const {
    Gf4 lead = leading();
    if (lead == Gf4::one()) return *this;
    return *this * lead.inverse();
}

Poly Poly::derivative() const {
    Poly r;
    if (degree() < 1) return r;
    r.c_.assign(c_.size() - 1, 0);
    for (std::size_t i = 1; i < c_.size(); i += 2) r.c_[i - 1] = c_[i]; // char 2
    r.trim();
    return r;
}

Poly gcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero())
        throw std::domain_error("Poly: gcd of two zero polynomials");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly compose(const Poly& f, const Poly& g) {
    Poly acc;
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * g;
        acc += Poly(f.coeff(i));
    }
    return acc;
}

Poly pow(const Poly& f, unsigned e) {
    Poly r = Poly::one(), base = f;
    while (e != 0) {
        if (e & 1u) r *= base;
        e >>= 1u;
        if (e != 0) base = base.squared();
    }
    return r;
}

bool canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return poly_format(a) < poly_format(b);
}

std::string poly_format(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const Gf4 c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += '+';
        if (i == 0 || c != Gf4::one()) {
            switch (c.code()) {
                case 1: out += '1'; break;
                case 2: out += 'a'; break;
                case 3: out += "a1"; break;
            }
        }
        if (i >= 1) {
            out += 'x';
            if (i >= 2) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    return out;
}

std::string Poly::str() const { return poly_format(*this); }

namespace {

constexpr int kMaxParseExponent = 1'000'000;

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        return s[i++];
    }
};

int parse_uint(Cursor& cur) {
    cur.skip_ws();
    if (cur.i >= cur.s.size() || !std::isdigit(static_cast<unsigned char>(cur.s[cur.i])))
        throw parse_error("expected an exponent", cur.i);
    long v = 0;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) {
        v = v * 10 + (cur.s[cur.i] - '0');
        if (v > kMaxParseExponent) throw parse_error("exponent too large", cur.i);
        ++cur.i;
    }
    return static_cast<int>(v);
}

// term := coef | coef? 'x' ('^' uint)?
std::pair<Gf4, int> parse_term(Cursor& cur) {
    const std::size_t start = cur.i;
    Gf4 c = Gf4::one();
    bool saw_coef = false;
    char ch = cur.peek();
    if (ch == '1') {
        cur.take();
        c = Gf4::one();
        saw_coef = true;
    } else if (ch == 'a') {
        cur.take();
        if (cur.i < cur.s.size() && cur.s[cur.i] == '1') { // 'a1', no space inside
            ++cur.i;
            c = Gf4::alpha1();
        } else {
            c = Gf4::alpha();
        }
        saw_coef = true;
    }
    if (cur.peek() == 'x') {
        cur.take();
        int e = 1;
        if (cur.peek() == '^') {
            cur.take();
            e = parse_uint(cur);
        }
        return {c, e};
    }
    if (!saw_coef) throw parse_error("expected a term", start);
    return {c, 0};
}

} // namespace

Poly poly_parse(std::string_view text) {
    Cursor cur{text};
    if (cur.done()) throw parse_error("empty input", cur.i);
    if (cur.peek() == '0') {
        cur.take();
        if (!cur.done()) throw parse_error("trailing input after '0'", cur.i);
        return Poly();
    }
    std::vector<std::uint8_t> codes;
    for (;;) {
        auto [c, e] = parse_term(cur);
        if (codes.size() < static_cast<std::size_t>(e) + 1)
            codes.resize(static_cast<std::size_t>(e) + 1, 0);
        codes[static_cast<std::size_t>(e)] ^= c.code();
        if (cur.done()) break;
        if (cur.peek() != '+') throw parse_error("expected '+'", cur.i);
        cur.take();
    }
    return Poly::from_codes(std::move(codes));
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << poly_format(f); }

MonicRange::MonicRange(int degree) : degree_(degree) {
    if (degree < 0) throw std::domain_error("MonicRange: negative degree");
    if (degree > 31) throw cap_error("MonicRange: degree above enumeration cap of 31");
    count_ = degree == 0 ? 1 : (std::uint64_t{1} << (2 * degree));
}

Poly MonicRange::iterator::operator*() const {
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(degree_) + 1, 0);
    codes.back() = 1;
    // pos digits base 4, most significant digit = constant coefficient
    for (int j = 0; j < degree_; ++j)
        codes[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>((pos_ >> (2 * (degree_ - 1 - j))) & 3u);
    return Poly::from_codes(std::move(codes));
}

} // namespace bup4
