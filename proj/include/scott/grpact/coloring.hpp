#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "scott/errors.hpp"

namespace scott::grpact {

inline void require_binary(const std::string& s, const char* who)
{
    require(s.find_first_not_of("01") == std::string::npos,
            std::string(who) + ": '" + s + "' is not a binary string");
}

/// A finitely supported coloring of the binary tree 2^{<w}; strings off the
/// support have value 0. The support is prefix-closed and values are >= 1.
class coloring {
public:
    coloring() = default;

    explicit coloring(std::map<std::string, std::uint64_t> values) : values_(std::move(values))
    {
        for (const auto& [s, v] : values_) {
            require_binary(s, "coloring");
            require(v >= 1, "coloring: support values must be >= 1");
            if (!s.empty())
                require(values_.count(s.substr(0, s.size() - 1)) != 0,
                        "coloring: support is not prefix-closed at '" + s + "'");
        }
    }

    const std::map<std::string, std::uint64_t>& values() const { return values_; }
    bool empty() const { return values_.empty(); }

    std::uint64_t operator()(const std::string& s) const
    {
        auto it = values_.find(s);
        return it == values_.end() ? 0 : it->second;
    }

    /// Length of the longest supported string (0 for empty colorings).
    std::size_t depth() const
    {
        std::size_t d = 0;
        for (const auto& [s, v] : values_)
            d = std::max(d, s.size());
        return d;
    }

    std::multiset<std::uint64_t> value_multiset() const
    {
        std::multiset<std::uint64_t> out;
        for (const auto& [s, v] : values_)
            out.insert(v);
        return out;
    }

    /// Supported strings with no supported one-symbol extension.
    std::vector<std::string> leaves() const
    {
        std::vector<std::string> out;
        for (const auto& [s, v] : values_)
            if (!values_.count(s + "0") && !values_.count(s + "1"))
                out.push_back(s);
        return out;
    }

    auto operator<=>(const coloring&) const = default;

private:
    std::map<std::string, std::uint64_t> values_;
};

/// A finite multiset of colorings.
using family = std::vector<coloring>;

inline family sorted(family f)
{
    std::sort(f.begin(), f.end());
    return f;
}

/// Level-wise flip: (g.s)(i) = s(i) xor bits(i) for i < min(|s|, d).
struct xor_elem {
    std::string bits;

    bool operator==(const xor_elem&) const = default;
};

/// A length- and prefix-preserving bijection between finite prefix-closed
/// sets of strings.
class partial_elem {
public:
    partial_elem() : map_{{"", ""}} {}

    explicit partial_elem(std::map<std::string, std::string> map) : map_(std::move(map))
    {
        require(map_.count("") != 0, "partial element: domain must contain the empty string");
        std::set<std::string> image;
        for (const auto& [s, t] : map_) {
            require_binary(s, "partial element");
            require_binary(t, "partial element");
            require(s.size() == t.size(), "partial element: '" + s + "' and its image differ in length");
            require(image.insert(t).second, "partial element: image '" + t + "' is hit twice");
            if (s.empty())
                continue;
            auto parent = map_.find(s.substr(0, s.size() - 1));
            require(parent != map_.end(), "partial element: domain is not prefix-closed at '" + s + "'");
            require(parent->second == t.substr(0, t.size() - 1),
                    "partial element: the image of '" + s + "' does not extend the image of its parent");
        }
    }

    const std::map<std::string, std::string>& map() const { return map_; }

    std::optional<std::string> image(const std::string& s) const
    {
        auto it = map_.find(s);
        if (it == map_.end())
            return std::nullopt;
        return it->second;
    }

    bool operator==(const partial_elem&) const = default;

private:
    std::map<std::string, std::string> map_;
};

/// An automorphism of the binary tree of depth d, given by one child-swap bit
/// per internal node p (|p| < d), indexed (2^|p| - 1) + rank(p).
class total_elem {
public:
    static constexpr std::size_t max_depth = 20;

    total_elem(std::size_t d, std::vector<bool> swaps) : depth_(d), swaps_(std::move(swaps))
    {
        require(d <= max_depth, "total element: depth above 20 is not supported");
        require(swaps_.size() == (std::size_t{1} << d) - 1, "total element: one swap bit per internal node required");
    }

    static total_elem identity(std::size_t d) { return total_elem(d, std::vector<bool>((std::size_t{1} << d) - 1)); }

    /// Element number `code` of the 2^(2^d - 1) automorphisms (bit i = swap i).
    static total_elem from_code(std::size_t d, std::uint64_t code)
    {
        std::vector<bool> s((std::size_t{1} << d) - 1);
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = (code >> i) & 1u;
        return total_elem(d, std::move(s));
    }

    static std::size_t node_index(const std::string& p)
    {
        std::size_t r = 0;
        for (char ch : p)
            r = 2 * r + static_cast<std::size_t>(ch - '0');
        return ((std::size_t{1} << p.size()) - 1) + r;
    }

    std::size_t depth() const { return depth_; }
    const std::vector<bool>& swaps() const { return swaps_; }
    bool swap_at(const std::string& p) const { return swaps_[node_index(p)]; }

    std::string image(const std::string& s) const
    {
        require(s.size() <= depth_, "total element: string '" + s + "' is deeper than the element");
        std::string out = s;
        std::size_t node = 0; // index of s|i
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (swaps_[node])
                out[i] = out[i] == '0' ? '1' : '0';
            node = 2 * node + 1 + static_cast<std::size_t>(s[i] - '0');
        }
        return out;
    }

    bool operator==(const total_elem&) const = default;

private:
    std::size_t depth_;
    std::vector<bool> swaps_;
};

using group_elem = std::variant<xor_elem, partial_elem, total_elem>;

inline std::string xor_image(const xor_elem& g, const std::string& s)
{
    std::string out = s;
    for (std::size_t i = 0; i < std::min(s.size(), g.bits.size()); ++i)
        if (g.bits[i] == '1')
            out[i] = out[i] == '0' ? '1' : '0';
    return out;
}

/// g.c, defined by (g.c)(g.s) = c(s). nullopt when a PARTIAL element does not
/// cover the support; XOR and TOTAL elements refuse supports deeper than d.
inline std::optional<coloring> act(const group_elem& g, const coloring& c)
{
    std::map<std::string, std::uint64_t> out;
    if (const auto* x = std::get_if<xor_elem>(&g)) {
        if (c.depth() > x->bits.size())
            throw limit_exceeded("act: coloring support is deeper than the XOR element");
        for (const auto& [s, v] : c.values())
            out[xor_image(*x, s)] = v;
    } else if (const auto* t = std::get_if<total_elem>(&g)) {
        if (c.depth() > t->depth())
            throw limit_exceeded("act: coloring support is deeper than the tree automorphism");
        for (const auto& [s, v] : c.values())
            out[t->image(s)] = v;
    } else {
        const auto& p = std::get<partial_elem>(g);
        for (const auto& [s, v] : c.values()) {
            auto img = p.image(s);
            if (!img)
                return std::nullopt;
            out[*img] = v;
        }
    }
    return coloring(std::move(out));
}

inline std::optional<family> act(const group_elem& g, const family& f)
{
    family out;
    for (const auto& c : f) {
        auto img = act(g, c);
        if (!img)
            return std::nullopt;
        out.push_back(std::move(*img));
    }
    return out;
}

/// g o h (h applied first). Both must be of the same kind and depth.
inline group_elem compose(const group_elem& g, const group_elem& h)
{
    require(g.index() == h.index(), "compose: elements of different kinds");
    if (const auto* x = std::get_if<xor_elem>(&g)) {
        const auto& y = std::get<xor_elem>(h);
        require(x->bits.size() == y.bits.size(), "compose: XOR elements of different depths");
        return xor_elem{xor_image(*x, y.bits)};
    }
    if (const auto* t = std::get_if<total_elem>(&g)) {
        const auto& u = std::get<total_elem>(h);
        require(t->depth() == u.depth(), "compose: tree automorphisms of different depths");
        std::vector<bool> s(t->swaps().size());
        // swap_{g o h}[p] = swap_h[p] xor swap_g[h(p)]
        std::vector<std::string> layer{""};
        for (std::size_t k = 0; k < t->depth(); ++k) {
            std::vector<std::string> next;
            for (const auto& p : layer) {
                s[total_elem::node_index(p)] = u.swap_at(p) != t->swap_at(u.image(p));
                next.push_back(p + '0');
                next.push_back(p + '1');
            }
            layer = std::move(next);
        }
        return total_elem(t->depth(), std::move(s));
    }
    const auto& p = std::get<partial_elem>(g);
    std::map<std::string, std::string> m;
    for (const auto& [s, t] : std::get<partial_elem>(h).map())
        if (auto img = p.image(t))
            m[s] = *img;
    return partial_elem(std::move(m));
}

struct xor_kind {
    std::size_t depth;
};
struct total_kind {
    std::size_t depth;
};
using search_kind = std::variant<xor_kind, total_kind>;

/// Some g of the given kind with g.A = B as multisets, searching every
/// element in increasing code order (so the identity is found first).
inline std::optional<group_elem> equiv_families(const family& a, const family& b, const search_kind& kind)
{
    const std::size_t d = std::visit([](auto k) { return k.depth; }, kind);
    for (const auto* f : {&a, &b})
        for (const auto& c : *f)
            require(c.depth() <= d, "equiv_families: a coloring is deeper than the search depth");
    if (a.size() != b.size())
        return std::nullopt;
    std::multiset<std::uint64_t> va, vb;
    for (const auto& c : a)
        for (auto v : c.value_multiset())
            va.insert(v);
    for (const auto& c : b)
        for (auto v : c.value_multiset())
            vb.insert(v);
    if (va != vb)
        return std::nullopt;

    const family target = sorted(b);
    auto matches = [&](const group_elem& g) { return sorted(*act(g, a)) == target; };
    if (std::holds_alternative<xor_kind>(kind)) {
        if (d > 24)
            throw limit_exceeded("equiv_families: XOR search above depth 24 is refused");
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << d); ++code) {
            std::string bits(d, '0');
            for (std::size_t i = 0; i < d; ++i)
                if ((code >> i) & 1u)
                    bits[i] = '1';
            group_elem g = xor_elem{bits};
            if (matches(g))
                return g;
        }
        return std::nullopt;
    }
    if (d > 4)
        throw limit_exceeded("equiv_families: TOTAL search above depth 4 is refused");
    const std::uint64_t count = std::uint64_t{1} << ((std::size_t{1} << d) - 1);
    for (std::uint64_t code = 0; code < count; ++code) {
        group_elem g = total_elem::from_code(d, code);
        if (matches(g))
            return g;
    }
    return std::nullopt;
}

/// c^k_{eta,tau}: value k on every prefix of eta or tau, 0 elsewhere.
inline coloring pair_coloring(std::uint64_t k, const std::string& eta, const std::string& tau)
{
    require(k >= 1 && k <= 3, "pair_coloring: k must be 1, 2 or 3");
    require(eta.size() == tau.size(), "pair_coloring: strings differ in length");
    require_binary(eta, "pair_coloring");
    require_binary(tau, "pair_coloring");
    std::map<std::string, std::uint64_t> v;
    for (std::size_t i = 0; i <= eta.size(); ++i) {
        v[eta.substr(0, i)] = k;
        v[tau.substr(0, i)] = k;
    }
    return coloring(std::move(v));
}

/// The fixed injective pairing (a, b) -> 2^a (2b + 1) for composing codes.
inline std::uint64_t pair_code(std::uint64_t a, std::uint64_t b)
{
    if (a >= 63 || b > ((UINT64_MAX >> a) - 1) / 2)
        throw limit_exceeded("pair_code: value does not fit in 64 bits");
    return (std::uint64_t{1} << a) * (2 * b + 1);
}

/// Family coding a set X of length-d strings for the XOR action: c_x has
/// value 1 at the root and x[|s| - 1] + 2 at every s with 1 <= |s| <= d;
/// `fillers` constant-1 colorings of the depth-d tree are added.
inline family encode_set_k(const std::set<std::string>& x, std::size_t d, std::size_t fillers)
{
    require(d <= 16, "encode_set_k: depth above 16 is not supported");
    for (const auto& s : x) {
        require_binary(s, "encode_set_k");
        require(s.size() == d, "encode_set_k: '" + s + "' does not have length " + std::to_string(d));
    }
    std::vector<std::string> all{""};
    for (std::size_t k = 0; k < all.size(); ++k)
        if (all[k].size() < d) {
            all.push_back(all[k] + '0');
            all.push_back(all[k] + '1');
        }
    family out;
    for (const auto& s : x) {
        std::map<std::string, std::uint64_t> v;
        for (const auto& node : all)
            v[node] = node.empty() ? 1 : static_cast<std::uint64_t>(s[node.size() - 1] - '0') + 2;
        out.emplace_back(std::move(v));
    }
    std::map<std::string, std::uint64_t> ones;
    for (const auto& node : all)
        ones[node] = 1;
    for (std::size_t i = 0; i < fillers; ++i)
        out.emplace_back(ones);
    return out;
}

} // namespace scott::grpact
