#pragma once

#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "scott/core/structure.hpp"
#include "scott/grpact/graph_coding.hpp"
#include "scott/ref/encoders.hpp"
#include "scott/ref/presentation.hpp"
#include "scott/rng.hpp"

namespace scott::verify {

/// Structure with one binary relation R on n points; bit (i*n + j) of mask
/// puts (i, j) in R.
inline core::finite_structure digraph(std::size_t n, std::uint64_t mask)
{
    std::vector<std::set<core::tuple>> rel(1);
    for (core::element i = 0; i < n; ++i)
        for (core::element j = 0; j < n; ++j)
            if ((mask >> (i * n + j)) & 1u)
                rel[0].insert({i, j});
    return core::finite_structure(core::signature({{"R", 2}}), n, std::move(rel));
}

inline core::finite_structure random_digraph(campaign_rng& rng, std::size_t n)
{
    return digraph(n, rng.next() & ((std::uint64_t{1} << (n * n)) - 1));
}

inline std::vector<core::element> random_perm(campaign_rng& rng, std::size_t n)
{
    auto p = rng.permutation(n);
    return std::vector<core::element>(p.begin(), p.end());
}

inline std::string random_bits(campaign_rng& rng, std::size_t n)
{
    std::string s(n, '0');
    for (auto& ch : s)
        ch = rng.coin() ? '1' : '0';
    return s;
}

/// BIN presentation of depth d; each color is OMEGA with probability 1/6,
/// else uniform in 1..max_color.
inline ref::presentation random_bin(campaign_rng& rng, std::size_t d, std::uint64_t max_color)
{
    std::vector<ext_nat> colors(std::size_t{1} << d);
    for (auto& c : colors)
        c = rng.below(6) == 0 ? ext_nat::omega() : ext_nat(1 + rng.below(max_color));
    return ref::presentation::bin(d, std::move(colors));
}

namespace detail {

template <class Choose>
std::vector<std::size_t> permuted_leaves(std::size_t w, std::size_t d, std::size_t k, std::size_t q, Choose& choose)
{
    if (k == d)
        return {q};
    std::vector<std::size_t> out;
    const std::vector<std::size_t> pi = choose(k, q);
    for (std::size_t j = 0; j < w; ++j) {
        auto sub = permuted_leaves(w, d, k + 1, q * w + pi[j], choose);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

} // namespace detail

/// Image of p under a random automorphism of its ambient tree: the children
/// of every internal node are permuted independently.
inline ref::presentation random_automorphic_image(const ref::presentation& p, campaign_rng& rng)
{
    auto choose = [&](std::size_t, std::size_t) { return rng.permutation(p.width()); };
    const auto order = detail::permuted_leaves(p.width(), p.depth(), 0, 0, choose);
    std::vector<ext_nat> colors(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        colors[i] = p.color(order[i]);
    return ref::presentation(p.kind(), p.width(), p.depth(), std::move(colors));
}

/// All prefix-closed digit-string sets over {0..w-1} with node length <= h.
inline std::vector<std::set<std::string>> all_trees(std::size_t w, std::size_t h)
{
    std::vector<std::string> cand;
    std::vector<std::string> layer{""};
    for (std::size_t k = 1; k <= h; ++k) {
        std::vector<std::string> next;
        for (const auto& s : layer)
            for (std::size_t a = 0; a < w; ++a)
                next.push_back(s + static_cast<char>('0' + a));
        cand.insert(cand.end(), next.begin(), next.end());
        layer = next;
    }
    require(cand.size() < 32, "all_trees: too many candidate nodes");
    std::vector<std::set<std::string>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << cand.size()); ++m) {
        std::set<std::string> s{""};
        for (std::size_t i = 0; i < cand.size(); ++i)
            if ((m >> i) & 1u)
                s.insert(cand[i]);
        bool closed = true;
        for (const auto& x : s)
            if (!x.empty() && !s.count(x.substr(0, x.size() - 1)))
                closed = false;
        if (closed)
            out.push_back(std::move(s));
    }
    return out;
}

/// Subsets of {0,1}^d with at most max_card elements, by increasing mask.
inline std::vector<std::set<std::string>> binary_subsets(std::size_t d, std::size_t max_card)
{
    const std::size_t n = std::size_t{1} << d;
    require(n < 32, "binary_subsets: depth too large");
    std::vector<std::set<std::string>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) > max_card)
            continue;
        std::set<std::string> s;
        for (std::size_t r = 0; r < n; ++r)
            if ((m >> r) & 1u)
                s.insert(ref::binary_string(r, d));
        out.push_back(std::move(s));
    }
    return out;
}

/// All labeled simple graphs on v vertices.
inline std::vector<grpact::graph_instance> all_graphs(std::size_t v)
{
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            slots.push_back({i, j});
    std::vector<grpact::graph_instance> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots.size()); ++m) {
        std::set<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if ((m >> k) & 1u)
                e.insert(slots[k]);
        out.emplace_back(v, e);
    }
    return out;
}

} // namespace scott::verify
