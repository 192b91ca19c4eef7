#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scott/orbit/orbit.hpp"

namespace scott::orbit {

/// The permutation group generated by gens, identity first and the rest in
/// lexicographic order.
inline finite_action generated_action(std::size_t n, const std::vector<std::vector<point>>& gens)
{
    std::vector<point> id(n);
    for (point x = 0; x < n; ++x)
        id[x] = x;
    std::set<std::vector<point>> seen{id};
    std::vector<std::vector<point>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<point>> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                require(s.size() == n, "generated_action: generator has wrong length");
                std::vector<point> gs(n);
                for (point x = 0; x < n; ++x)
                    gs[x] = s[g[x]];
                if (seen.insert(gs).second)
                    next.push_back(std::move(gs));
            }
        frontier = std::move(next);
    }
    seen.erase(id);
    std::vector<std::vector<point>> perms{id};
    perms.insert(perms.end(), seen.begin(), seen.end());
    return finite_action(n, std::move(perms));
}

/// Six subgroups of the symmetric group on 4 points, each with a short name.
inline std::vector<std::pair<std::string, finite_action>> subgroups_of_s4()
{
    std::vector<std::pair<std::string, finite_action>> out;
    out.emplace_back("identity", generated_action(4, {}));
    out.emplace_back("z2", generated_action(4, {{1, 0, 2, 3}}));
    out.emplace_back("z4", generated_action(4, {{1, 2, 3, 0}}));
    out.emplace_back("klein", generated_action(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
    out.emplace_back("s3", generated_action(4, {{1, 0, 2, 3}, {1, 2, 0, 3}}));
    out.emplace_back("s4", generated_action(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
    return out;
}

inline std::vector<std::vector<point>> all_subsets(std::size_t n)
{
    std::vector<std::vector<point>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<point> s;
        for (point x = 0; x < n; ++x)
            if ((mask >> x) & 1u)
                s.push_back(x);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace scott::orbit
