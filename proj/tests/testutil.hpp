#pragma once

#include <cstdint>
#include <vector>

#include "bup4/poly.hpp"

namespace bup4::test {

// Deterministic generator for reproducible randomized tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d4a06e33e16a4dULL;
        return z ^ (z >> 31);
    }

    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

private:
    std::uint64_t state_;
};

inline Poly random_poly(Rng& rng, int max_degree) {
    const int d = rng.below(max_degree + 2) - 1; // -1 gives the zero polynomial
    if (d < 0) return Poly::zero();
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(d) + 1);
    for (auto& c : codes) c = static_cast<std::uint8_t>(rng.below(4));
    codes.back() = static_cast<std::uint8_t>(1 + rng.below(3));
    return Poly::from_codes(std::move(codes));
}

inline Poly random_monic(Rng& rng, int degree) {
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(degree) + 1);
    for (auto& c : codes) c = static_cast<std::uint8_t>(rng.below(4));
    codes.back() = 1;
    return Poly::from_codes(std::move(codes));
}

} // namespace bup4::test
