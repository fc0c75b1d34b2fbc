#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bup4/gf4.hpp"

namespace bup4 {

// Dense polynomial over F4, coefficient of x^i at index i, no trailing zeros
// stored. The zero polynomial has an empty coefficient sequence and degree -1.
// Immutable in spirit: all operations return new values.
class Poly {
public:
    Poly() noexcept = default;                     // zero
    explicit Poly(Gf4 constant);                   // degree <= 0
    Poly(std::initializer_list<std::uint8_t> codes); // codes, constant first

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Gf4::one()); }
    static Poly x() { return monomial(1); }
    static Poly monomial(int degree, Gf4 coeff = Gf4::one());
    static Poly from_codes(std::vector<std::uint8_t> codes); // trims trailing zeros

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    Gf4 coeff(int i) const noexcept;
    Gf4 leading() const; // throws on zero polynomial
    const std::vector<std::uint8_t>& codes() const noexcept { return c_; }

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const { return *this + rhs; } // char 2
    Poly operator*(const Poly& rhs) const;
    Poly operator*(Gf4 s) const;
    Poly& operator+=(const Poly& rhs) { return *this = *this + rhs; }
    Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }

    // Quotient and remainder: f = q*g + r with deg r < deg g.
    // Throws std::domain_error when g is zero.
    friend std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
    Poly operator/(const Poly& g) const { return divrem(*this, g).first; }
    Poly operator%(const Poly& g) const { return divrem(*this, g).second; }

    Gf4 operator()(Gf4 point) const noexcept; // Horner evaluation

    // Coefficients squared and spread to even indices; (f^2)(x) = f(x^2) in char 2
    // composed with Frobenius on coefficients.
    Poly squared() const;

    Poly monic() const; // divide by leading coefficient; throws on zero
    Poly derivative() const;

    std::string str() const; // canonical text

    friend bool operator==(const Poly&, const Poly&) noexcept = default;

private:
    std::vector<std::uint8_t> c_;

    void trim() noexcept;
};

// true if d divides f exactly.
bool divides(const Poly& d, const Poly& f);

// Monic gcd; throws std::domain_error when both arguments are zero.
Poly gcd(const Poly& f, const Poly& g);

// f(g(x)).
Poly compose(const Poly& f, const Poly& g);

Poly pow(const Poly& f, unsigned e);

// Total order used for canonical factor lists: degree first, then canonical text.
bool canonical_less(const Poly& a, const Poly& b);

// Canonical text form; inverse of poly_parse on canonical strings.
std::string poly_format(const Poly& f);

// Grammar:  poly := '0' | term ('+' term)* ;  term := coef | coef? 'x' ('^' uint)? ;
//           coef := '1' | 'a' | 'a1' ;
// Whitespace between tokens is tolerated. Repeated exponents are summed.
// Throws parse_error with a byte position on malformed input.
Poly poly_parse(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Poly& f);

// All 4^degree monic polynomials of exactly `degree`, ordered lexicographically
// by coefficient code starting from the constant coefficient.
// Degree must lie in [0, 31] so the position counter fits in 64 bits.
class MonicRange {
public:
    explicit MonicRange(int degree);

    class iterator {
    public:
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;

        iterator() noexcept = default;
        iterator(int degree, std::uint64_t pos) noexcept : degree_(degree), pos_(pos) {}

        Poly operator*() const;
        iterator& operator++() noexcept { ++pos_; return *this; }
        iterator operator++(int) noexcept { iterator t = *this; ++pos_; return t; }
        friend bool operator==(const iterator&, const iterator&) noexcept = default;

    private:
        int degree_ = 0;
        std::uint64_t pos_ = 0;
    };

    iterator begin() const noexcept { return iterator(degree_, 0); }
    iterator end() const noexcept { return iterator(degree_, count_); }
    std::uint64_t size() const noexcept { return count_; }

private:
    int degree_;
    std::uint64_t count_;
};

} // namespace bup4
