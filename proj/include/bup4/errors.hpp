#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bup4 {

// Malformed polynomial text. `position` is a byte offset into the input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A configured enumeration or search cap would be exceeded.
class cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bup4
