#pragma once

#include <stdexcept>
#include <string>

namespace scott {

// Malformed input or a violated precondition.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct signature_mismatch : input_error {
    using input_error::input_error;
};

// A presentation that does not have the shape an inverse map expects
// (e.g. decoding a set from base colors that are not injective).
struct malformed_presentation : input_error {
    using input_error::input_error;
};

// A configured bound refused the request: oracle size, search depth,
// materialization capacity, 64-bit overflow.
struct limit_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw input_error(what);
}

} // namespace scott
