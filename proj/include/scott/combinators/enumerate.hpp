#pragma once

#include <functional>
#include <set>
#include <vector>

#include "scott/combinators/invariant.hpp"

namespace scott::comb {

/// Level-k invariants by brute force: level 0 is BASE(1..base_count); each
/// level-(k+1) value is jump_invariant applied to an item list holding every
/// level-k value 0..cap times (cap copies stand in for "infinitely many").
/// Returns the distinct results in canonical order.
inline std::vector<nested_invariant> enumerate_level(std::size_t k, std::size_t base_count, std::uint64_t cap,
                                                     std::size_t max_values = std::size_t{1} << 16)
{
    std::vector<nested_invariant> level;
    for (std::size_t b = 1; b <= base_count; ++b)
        level.push_back(nested_invariant::base(b));
    for (std::size_t i = 0; i < k; ++i) {
        std::set<nested_invariant> next;
        std::vector<std::uint64_t> times(level.size(), 0);
        while (true) {
            std::size_t j = 0;
            while (j < times.size() && times[j] == cap)
                times[j++] = 0;
            if (j == times.size())
                break;
            ++times[j];
            std::vector<nested_invariant> items;
            for (std::size_t x = 0; x < level.size(); ++x)
                for (std::uint64_t t = 0; t < times[x]; ++t)
                    items.push_back(level[x]);
            next.insert(jump_invariant(items, cap));
            if (next.size() > max_values)
                throw limit_exceeded("enumerate_level: more values than the enumeration bound");
        }
        level.assign(next.begin(), next.end());
    }
    return level;
}

/// Total number of base chains, i.e. the size of the assembly in cycles.
inline std::uint64_t chain_units(const nested_invariant& inv)
{
    switch (inv.kind()) {
    case inv_kind::base:
        return inv.value().value();
    case inv_kind::jump: {
        std::uint64_t u = 0;
        for (std::size_t i = 0; i < inv.children().size(); ++i)
            u += inv.mults()[i].value() * chain_units(inv.children()[i]);
        return u;
    }
    case inv_kind::prod: {
        std::uint64_t u = 0;
        for (const auto& c : inv.children())
            u += chain_units(c);
        return u;
    }
    }
    return 0;
}

/// All finite invariants of depth <= max_depth whose BASE values,
/// multiplicities and PROD lengths are at most max_value and whose
/// assemblies use at most max_units chains.
inline std::vector<nested_invariant> small_invariants(std::size_t max_depth, std::uint64_t max_value,
                                                      std::uint64_t max_units)
{
    std::vector<nested_invariant> all;
    for (std::uint64_t b = 1; b <= std::min(max_value, max_units); ++b)
        all.push_back(nested_invariant::base(b));
    for (std::size_t d = 1; d <= max_depth; ++d) {
        std::vector<nested_invariant> prev = all;
        std::set<nested_invariant> grown(all.begin(), all.end());
        // JUMP: choose a multiplicity 0..max_value for each earlier value.
        std::vector<std::uint64_t> mult(prev.size(), 0);
        std::function<void(std::size_t, std::uint64_t)> pick = [&](std::size_t i, std::uint64_t units) {
            if (i == prev.size()) {
                std::vector<std::pair<nested_invariant, ext_nat>> entries;
                for (std::size_t x = 0; x < prev.size(); ++x)
                    if (mult[x] != 0)
                        entries.emplace_back(prev[x], mult[x]);
                if (!entries.empty())
                    grown.insert(nested_invariant::jump(std::move(entries)));
                return;
            }
            const auto cost = chain_units(prev[i]);
            for (std::uint64_t m = 0; m <= max_value && units + m * cost <= max_units; ++m) {
                mult[i] = m;
                pick(i + 1, units + m * cost);
            }
            mult[i] = 0;
        };
        pick(0, 0);
        // PROD: sequences of length 1..max_value.
        std::function<void(std::vector<nested_invariant>&, std::uint64_t)> seq = [&](std::vector<nested_invariant>& cur,
                                                                                      std::uint64_t units) {
            if (!cur.empty())
                grown.insert(nested_invariant::prod(cur));
            if (cur.size() == max_value)
                return;
            for (const auto& c : prev) {
                const auto cost = chain_units(c);
                if (units + cost > max_units)
                    continue;
                cur.push_back(c);
                seq(cur, units + cost);
                cur.pop_back();
            }
        };
        std::vector<nested_invariant> cur;
        seq(cur, 0);
        all.assign(grown.begin(), grown.end());
    }
    return all;
}

} // namespace scott::comb
