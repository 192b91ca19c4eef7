#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "scott/core/structure.hpp"

namespace scott::core {

namespace detail {

// Positions are partial injections m -> n, stored as an image array with
// `unset` for unplayed elements. Replaying an already chosen element never
// helps the spoiler (the duplicator must echo it and the position is
// unchanged with fewer rounds left), so only fresh moves are explored.
class ef_solver {
public:
    static constexpr element unset = ~element{0};

    ef_solver(const finite_structure& m, const finite_structure& n) : m_(m), n_(n)
    {
        fwd_.assign(m.size(), unset);
        bwd_.assign(n.size(), unset);
    }

    bool duplicator_wins(std::size_t rounds)
    {
        if (rounds == 0)
            return true;
        std::string key(reinterpret_cast<const char*>(fwd_.data()), fwd_.size() * sizeof(element));
        key.push_back(static_cast<char>(rounds & 0xff));
        key.push_back(static_cast<char>(rounds >> 8));
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const bool result = solve(rounds);
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    bool solve(std::size_t rounds)
    {
        for (element a = 0; a < m_.size(); ++a) {
            if (fwd_[a] != unset)
                continue;
            bool answered = false;
            for (element b = 0; b < n_.size() && !answered; ++b)
                answered = bwd_[b] == unset && try_pair(a, b, rounds);
            if (!answered)
                return false;
        }
        for (element b = 0; b < n_.size(); ++b) {
            if (bwd_[b] != unset)
                continue;
            bool answered = false;
            for (element a = 0; a < m_.size() && !answered; ++a)
                answered = fwd_[a] == unset && try_pair(a, b, rounds);
            if (!answered)
                return false;
        }
        return true;
    }

    bool try_pair(element a, element b, std::size_t rounds)
    {
        fwd_[a] = b;
        bwd_[b] = a;
        const bool ok = partial_iso_with(a) && duplicator_wins(rounds - 1);
        fwd_[a] = unset;
        bwd_[b] = unset;
        return ok;
    }

    // Checks every atom over the mapped elements that mentions a.
    bool partial_iso_with(element a)
    {
        std::vector<element> dom;
        for (element x = 0; x < m_.size(); ++x)
            if (fwd_[x] != unset)
                dom.push_back(x);
        tuple src, dst;
        for (std::size_t s = 0; s < m_.sig().size(); ++s) {
            const std::size_t r = m_.sig()[s].arity;
            std::vector<std::size_t> idx(r, 0);
            src.resize(r);
            dst.resize(r);
            while (true) {
                bool mentions = false;
                for (std::size_t i = 0; i < r; ++i) {
                    src[i] = dom[idx[i]];
                    dst[i] = fwd_[src[i]];
                    mentions = mentions || src[i] == a;
                }
                if (mentions && m_.holds(s, src) != n_.holds(s, dst))
                    return false;
                std::size_t i = r;
                while (i > 0 && idx[i - 1] + 1 == dom.size())
                    idx[--i] = 0;
                if (i == 0)
                    break;
                ++idx[i - 1];
            }
        }
        return true;
    }

    const finite_structure& m_;
    const finite_structure& n_;
    std::vector<element> fwd_, bwd_;
    std::unordered_map<std::string, bool> memo_;
};

} // namespace detail

/// True iff the duplicator survives `rounds` rounds of the EF game on (m, n).
inline bool ef_equiv(const finite_structure& m, const finite_structure& n, std::size_t rounds)
{
    require_same_signature(m, n);
    return detail::ef_solver(m, n).duplicator_wins(rounds);
}

} // namespace scott::core
