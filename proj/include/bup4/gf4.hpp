#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace bup4 {

// The field with four elements {0, 1, a, a+1}, a^2 + a + 1 = 0.
// An element is a 2-bit code b1*a + b0; codes 0,1,2,3 stand for 0, 1, a, a+1.
// Characteristic 2: addition is XOR of codes, every element is its own negative.
class Gf4 {
public:
    constexpr Gf4() noexcept = default;
    constexpr explicit Gf4(std::uint8_t code) : code_(code) {
        if (code > 3) throw std::domain_error("Gf4 code out of range");
    }

    static constexpr Gf4 zero() noexcept { return Gf4(unchecked{}, 0); }
    static constexpr Gf4 one() noexcept { return Gf4(unchecked{}, 1); }
    static constexpr Gf4 alpha() noexcept { return Gf4(unchecked{}, 2); }
    static constexpr Gf4 alpha1() noexcept { return Gf4(unchecked{}, 3); } // a+1

    constexpr std::uint8_t code() const noexcept { return code_; }
    constexpr bool is_zero() const noexcept { return code_ == 0; }

    friend constexpr Gf4 operator+(Gf4 x, Gf4 y) noexcept {
        return Gf4(unchecked{}, static_cast<std::uint8_t>(x.code_ ^ y.code_));
    }
    friend constexpr Gf4 operator-(Gf4 x, Gf4 y) noexcept { return x + y; }

    friend constexpr Gf4 operator*(Gf4 x, Gf4 y) noexcept {
        return Gf4(unchecked{}, mul_table[x.code_][y.code_]);
    }

    constexpr Gf4& operator+=(Gf4 y) noexcept { return *this = *this + y; }
    constexpr Gf4& operator*=(Gf4 y) noexcept { return *this = *this * y; }

    // Frobenius; squaring permutes the field (0,1 fixed, a <-> a+1).
    constexpr Gf4 square() const noexcept { return *this * *this; }

    // Equals square() for nonzero x, since x^3 = 1.
    constexpr Gf4 inverse() const {
        if (code_ == 0) throw std::domain_error("Gf4: inverse of zero");
        return square();
    }

    friend constexpr bool operator==(Gf4 x, Gf4 y) noexcept = default;

private:
    struct unchecked {};
    constexpr Gf4(unchecked, std::uint8_t code) noexcept : code_(code) {}

    // mul_table[x][y]: forced by a^2 = a+1.
    static constexpr std::array<std::array<std::uint8_t, 4>, 4> mul_table = {{
        {0, 0, 0, 0},
        {0, 1, 2, 3},
        {0, 2, 3, 1},
        {0, 3, 1, 2},
    }};

    std::uint8_t code_ = 0;
};

inline constexpr std::array<Gf4, 4> gf4_elements = {Gf4::zero(), Gf4::one(), Gf4::alpha(),
                                                    Gf4::alpha1()};

} // namespace bup4
