#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scott/core/structure.hpp"

namespace scott::core {

inline constexpr std::size_t default_oracle_bound = 8;

namespace detail {

class iso_search {
public:
    iso_search(const finite_structure& m, const finite_structure& n) : m_(m), n_(n)
    {
        map_.assign(m.size(), 0);
        used_.assign(n.size(), false);
        // Tuples of m grouped by their largest entry: they become fully
        // mapped exactly when that element is assigned.
        by_max_.resize(m.size());
        for (std::size_t s = 0; s < m.sig().size(); ++s)
            for (const auto& t : m.relation(s)) {
                element hi = 0;
                for (element e : t)
                    hi = std::max(hi, e);
                by_max_[hi].push_back({s, &t});
            }
    }

    std::optional<bijection> run()
    {
        if (extend(0))
            return bijection{map_};
        return std::nullopt;
    }

private:
    struct entry {
        std::size_t sym;
        const tuple* t;
    };

    bool extend(element a)
    {
        if (a == m_.size())
            return true;
        for (element b = 0; b < n_.size(); ++b) {
            if (used_[b])
                continue;
            map_[a] = b;
            if (!consistent(a))
                continue;
            used_[b] = true;
            if (extend(a + 1))
                return true;
            used_[b] = false;
        }
        return false;
    }

    // Forward images of m's tuples closed by a land in n. Tuple counts per
    // symbol were checked up front, so a complete injective map that sends
    // every tuple into n is onto n's relations as well.
    bool consistent(element a)
    {
        for (const auto& [s, t] : by_max_[a]) {
            img_.resize(t->size());
            for (std::size_t i = 0; i < t->size(); ++i)
                img_[i] = map_[(*t)[i]];
            if (!n_.holds(s, img_))
                return false;
        }
        return true;
    }

    const finite_structure& m_;
    const finite_structure& n_;
    std::vector<element> map_;
    std::vector<bool> used_;
    std::vector<std::vector<entry>> by_max_;
    tuple img_;
};

} // namespace detail

/// Exhaustive isomorphism search, independent of the refinement engine.
/// Returns a verified witness or nullopt. Universes above `bound` are refused.
inline std::optional<bijection> brute_force_iso(const finite_structure& m, const finite_structure& n,
                                                std::size_t bound = default_oracle_bound)
{
    require_same_signature(m, n);
    if (m.size() != n.size())
        return std::nullopt;
    if (m.size() > bound)
        throw limit_exceeded("brute_force_iso: universe of size " + std::to_string(m.size()) +
                             " exceeds oracle bound " + std::to_string(bound));
    for (std::size_t s = 0; s < m.sig().size(); ++s)
        if (m.relation(s).size() != n.relation(s).size())
            return std::nullopt;
    return detail::iso_search(m, n).run();
}

} // namespace scott::core
