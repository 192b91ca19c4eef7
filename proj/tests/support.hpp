#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "scott/core/structure.hpp"
#include "scott/rng.hpp"
#include "scott/verify/generators.hpp"

namespace scott::fixtures {

using verify::all_trees;
using verify::digraph;
using verify::random_automorphic_image;
using verify::random_bin;
using verify::random_digraph;
using verify::random_perm;

inline core::signature one_binary(const char* name = "R")
{
    return core::signature({{name, 2}});
}

inline core::finite_structure strict_order(std::size_t n)
{
    std::vector<std::set<core::tuple>> rel(1);
    for (core::element i = 0; i < n; ++i)
        for (core::element j = i + 1; j < n; ++j)
            rel[0].insert({i, j});
    return core::finite_structure(one_binary("<"), n, std::move(rel));
}

/// Smallest relation mask over all relabelings: an isomorphism-class key
/// computed by plain enumeration of the symmetric group.
inline std::uint64_t min_relabeled_mask(std::size_t n, std::uint64_t mask)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t img = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((mask >> (i * n + j)) & 1u)
                    img |= std::uint64_t{1} << (p[i] * n + p[j]);
        best = std::min(best, img);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

} // namespace scott::fixtures

#include "scott/ref/presentation.hpp"

namespace scott::fixtures {

// Leaf order after permuting the children of every internal node; choose(k, q)
// returns the child permutation at the level-k node with prefix index q.
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

inline ref::presentation reorder(const ref::presentation& p, const std::vector<std::size_t>& order)
{
    std::vector<ext_nat> colors(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        colors[i] = p.color(order[i]);
    return ref::presentation(p.kind(), p.width(), p.depth(), std::move(colors));
}

/// True iff some child-swap automorphism of the BIN tree carries p onto q,
/// by enumerating all 2^(2^d - 1) swap patterns.
inline bool bin_automorphic(const ref::presentation& p, const ref::presentation& q)
{
    const std::size_t d = p.depth();
    const std::size_t internal = (std::size_t{1} << d) - 1;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << internal); ++bits) {
        auto choose = [&](std::size_t k, std::size_t idx) {
            const std::size_t node = ((std::size_t{1} << k) - 1) + idx;
            return (bits >> node) & 1u ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1};
        };
        if (reorder(p, permuted_leaves(2, d, 0, 0, choose)) == q)
            return true;
    }
    return false;
}

} // namespace scott::fixtures
