#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "scott/errors.hpp"

namespace scott {

/// A natural number or the symbolic value OMEGA, which sits above every
/// natural number. Used for colors (sizes of E_inf classes), multiplicities
/// and capped counts.
class ext_nat {
public:
    constexpr ext_nat() = default;
    constexpr ext_nat(std::uint64_t v) : value_(v) {}

    static constexpr ext_nat omega()
    {
        ext_nat e;
        e.omega_ = true;
        return e;
    }

    constexpr bool is_omega() const { return omega_; }
    constexpr bool is_finite() const { return !omega_; }

    std::uint64_t value() const
    {
        if (omega_)
            throw input_error("ext_nat: OMEGA has no finite value");
        return value_;
    }

    /// Values >= threshold collapse to OMEGA.
    constexpr ext_nat capped(std::uint64_t threshold) const
    {
        if (omega_ || value_ >= threshold)
            return omega();
        return *this;
    }

    constexpr auto operator<=>(const ext_nat& o) const
    {
        if (omega_ != o.omega_)
            return omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
        if (omega_)
            return std::strong_ordering::equal;
        return value_ <=> o.value_;
    }
    constexpr bool operator==(const ext_nat& o) const
    {
        return omega_ == o.omega_ && (omega_ || value_ == o.value_);
    }

    std::string to_string() const { return omega_ ? "omega" : std::to_string(value_); }

private:
    std::uint64_t value_ = 0;
    bool omega_ = false;
};

} // namespace scott
