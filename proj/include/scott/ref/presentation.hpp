#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scott/errors.hpp"
#include "scott/ext_nat.hpp"

namespace scott::ref {

enum class variant { bin, inf };

/// A depth-d colored tree presenting a model of REF(bin) or REF(inf).
///
/// Addresses are strings of length d over {0..w-1} (w = 2 for BIN) written
/// with one decimal digit per symbol. Leaf colors are stored in
/// lexicographic address order, i.e. colors[i] belongs to i written in base
/// w with d digits. The E_inf class of an address has leafColor elements.
class presentation {
public:
    static constexpr std::size_t max_leaves = std::size_t{1} << 22;

    presentation(variant v, std::size_t width, std::size_t depth, std::vector<ext_nat> colors)
        : variant_(v), width_(width), depth_(depth), colors_(std::move(colors))
    {
        require(v == variant::inf || width == 2, "presentation: BIN presentations have width 2");
        require(width >= 2 && width <= 10, "presentation: width must be in 2..10");
        require(depth >= 1, "presentation: depth must be >= 1");
        require(colors_.size() == leaf_count(width, depth), "presentation: one color per address required");
        for (const auto& c : colors_)
            require(c >= ext_nat(1), "presentation: colors must be >= 1");
    }

    static presentation bin(std::size_t depth, std::vector<ext_nat> colors)
    {
        return presentation(variant::bin, 2, depth, std::move(colors));
    }
    static presentation inf(std::size_t width, std::size_t depth, std::vector<ext_nat> colors)
    {
        return presentation(variant::inf, width, depth, std::move(colors));
    }

    /// Number of addresses w^d; refuses trees above max_leaves.
    static std::size_t leaf_count(std::size_t width, std::size_t depth)
    {
        std::size_t n = 1;
        for (std::size_t i = 0; i < depth; ++i) {
            if (n > max_leaves / width)
                throw limit_exceeded("presentation: more than 2^22 addresses");
            n *= width;
        }
        return n;
    }

    variant kind() const { return variant_; }
    std::size_t width() const { return width_; }
    std::size_t depth() const { return depth_; }
    std::size_t size() const { return colors_.size(); }
    const std::vector<ext_nat>& colors() const { return colors_; }
    const ext_nat& color(std::size_t leaf) const { return colors_[leaf]; }
    const ext_nat& color(const std::string& address) const { return colors_[index_of(address)]; }

    std::string address(std::size_t leaf) const
    {
        std::string s(depth_, '0');
        for (std::size_t i = depth_; i-- > 0;) {
            s[i] = static_cast<char>('0' + leaf % width_);
            leaf /= width_;
        }
        return s;
    }

    std::size_t index_of(const std::string& address) const
    {
        require(address.size() == depth_, "presentation: address '" + address + "' has wrong length");
        std::size_t i = 0;
        for (char ch : address) {
            require(ch >= '0' && static_cast<std::size_t>(ch - '0') < width_,
                    "presentation: address '" + address + "' uses a symbol outside the alphabet");
            i = i * width_ + static_cast<std::size_t>(ch - '0');
        }
        return i;
    }

    bool same_shape(const presentation& o) const
    {
        return variant_ == o.variant_ && width_ == o.width_ && depth_ == o.depth_;
    }

    bool operator==(const presentation&) const = default;

private:
    variant variant_;
    std::size_t width_;
    std::size_t depth_;
    std::vector<ext_nat> colors_;
};

} // namespace scott::ref
