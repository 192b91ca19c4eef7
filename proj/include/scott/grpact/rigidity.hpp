#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scott/grpact/coloring.hpp"

namespace scott::grpact {

struct rigidity_witness {
    std::vector<std::string> a, b, c;
};

/// Searches for tuples a, b, c of depth-d nodes with a ~ b ~ c and
/// (a, b) ~ (a, c) but b != c under the given action. Such a triple exists
/// iff some h fixing a moves an element b of a's orbit, so the search runs
/// over orbit representatives a (in order of first appearance), their
/// stabilizers, and the orbit of a. Nodes are ordered lexicographically.
inline std::optional<rigidity_witness> find_rigidity_counterexample(const search_kind& kind, std::size_t tuple_len)
{
    const bool is_xor = std::holds_alternative<xor_kind>(kind);
    const std::size_t d = std::visit([](auto k) { return k.depth; }, kind);
    require(tuple_len >= 1, "rigidity: tuple length must be >= 1");
    if (is_xor ? d > 8 : d > 4)
        throw limit_exceeded(is_xor ? "rigidity: XOR search above depth 8 is refused"
                                    : "rigidity: TOTAL search above depth 4 is refused");
    const std::size_t nodes = std::size_t{1} << d;
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < tuple_len; ++i) {
        tuples *= nodes;
        if (tuples > (std::uint64_t{1} << 22))
            throw limit_exceeded("rigidity: too many tuples");
    }

    std::vector<std::string> names(nodes);
    for (std::size_t r = 0; r < nodes; ++r) {
        names[r].assign(d, '0');
        for (std::size_t j = 0; j < d; ++j)
            if ((r >> (d - 1 - j)) & 1u)
                names[r][j] = '1';
    }
    // Node permutation of every group element.
    std::vector<std::vector<std::uint32_t>> perm;
    const std::uint64_t group = is_xor ? (std::uint64_t{1} << d) : (std::uint64_t{1} << (nodes - 1));
    for (std::uint64_t code = 0; code < group; ++code) {
        std::vector<std::uint32_t> p(nodes);
        if (is_xor) {
            for (std::size_t r = 0; r < nodes; ++r)
                p[r] = static_cast<std::uint32_t>(r ^ code);
        } else {
            const auto g = total_elem::from_code(d, code);
            for (std::size_t r = 0; r < nodes; ++r) {
                const auto img = g.image(names[r]);
                std::uint32_t x = 0;
                for (char ch : img)
                    x = 2 * x + static_cast<std::uint32_t>(ch - '0');
                p[r] = x;
            }
        }
        perm.push_back(std::move(p));
    }

    auto unpack = [&](std::uint64_t t) {
        std::vector<std::uint32_t> out(tuple_len);
        for (std::size_t i = tuple_len; i-- > 0; t /= nodes)
            out[i] = static_cast<std::uint32_t>(t % nodes);
        return out;
    };
    auto pack = [&](const std::vector<std::uint32_t>& v) {
        std::uint64_t t = 0;
        for (auto x : v)
            t = t * nodes + x;
        return t;
    };
    auto apply = [&](std::size_t g, std::uint64_t t) {
        auto v = unpack(t);
        for (auto& x : v)
            x = perm[g][x];
        return pack(v);
    };
    auto named = [&](std::uint64_t t) {
        std::vector<std::string> out;
        for (auto x : unpack(t))
            out.push_back(names[x]);
        return out;
    };

    std::vector<bool> seen(tuples, false);
    for (std::uint64_t a = 0; a < tuples; ++a) {
        if (seen[a])
            continue;
        std::vector<std::size_t> stab;
        std::vector<std::uint64_t> orbit;
        for (std::size_t g = 0; g < perm.size(); ++g) {
            const auto img = apply(g, a);
            if (img == a)
                stab.push_back(g);
            if (!seen[img]) {
                seen[img] = true;
                orbit.push_back(img);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        for (auto b : orbit)
            for (auto h : stab) {
                const auto c = apply(h, b);
                if (c != b)
                    return rigidity_witness{named(a), named(b), named(c)};
            }
    }
    return std::nullopt;
}

} // namespace scott::grpact
