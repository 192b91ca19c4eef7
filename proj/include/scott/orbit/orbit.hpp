#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scott/core/sentence.hpp"

namespace scott::orbit {

using point = std::uint32_t;
using ptuple = std::vector<point>;

/// A finite group given by the permutations it induces on {0..n-1}.
/// Element 0 is the identity; closure under composition and inverses is
/// verified on construction.
class finite_action {
public:
    finite_action(std::size_t n, std::vector<std::vector<point>> perms) : n_(n), perms_(std::move(perms))
    {
        require(!perms_.empty(), "action: at least the identity is required");
        std::map<std::vector<point>, std::size_t> index;
        for (std::size_t g = 0; g < perms_.size(); ++g) {
            const auto& p = perms_[g];
            require(p.size() == n_, "action: permutation " + std::to_string(g) + " has wrong length");
            std::vector<bool> hit(n_, false);
            for (point x : p) {
                require(x < n_ && !hit[x], "action: entry " + std::to_string(g) + " is not a permutation");
                hit[x] = true;
            }
            require(index.emplace(p, g).second, "action: permutation " + std::to_string(g) + " is listed twice");
        }
        for (point x = 0; x < n_; ++x)
            require(perms_[0][x] == x, "action: element 0 must be the identity");
        for (const auto& g : perms_) {
            std::vector<point> inv(n_);
            for (point x = 0; x < n_; ++x)
                inv[g[x]] = x;
            require(index.count(inv) != 0, "action: not closed under inverses");
            for (const auto& h : perms_) {
                std::vector<point> gh(n_);
                for (point x = 0; x < n_; ++x)
                    gh[x] = g[h[x]];
                require(index.count(gh) != 0, "action: not closed under composition");
            }
        }
    }

    std::size_t set_size() const { return n_; }
    std::size_t group_size() const { return perms_.size(); }
    const std::vector<point>& perm(std::size_t g) const { return perms_[g]; }
    point apply(std::size_t g, point x) const { return perms_[g][x]; }

    ptuple apply(std::size_t g, const ptuple& t) const
    {
        ptuple out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            out[i] = perms_[g][t[i]];
        return out;
    }

private:
    std::size_t n_;
    std::vector<std::vector<point>> perms_;
};

/// Lexicographically least member of the diagonal orbit of t.
inline ptuple orbit_canon(const finite_action& act, const ptuple& t)
{
    for (point x : t)
        require(x < act.set_size(), "orbit_canon: entry out of range");
    ptuple best = t;
    for (std::size_t g = 1; g < act.group_size(); ++g)
        best = std::min(best, act.apply(g, t));
    return best;
}

/// M_A: a subset A of the points together with the orbit datum of every
/// injective tuple over A of length 1..|A|. The same shape with arbitrary
/// element labels is used for candidate structures N in embeds_as_nice.
struct orbit_structure {
    std::vector<point> base; // sorted
    std::map<ptuple, ptuple> orbits;

    bool operator==(const orbit_structure&) const = default;
};

namespace detail {

template <class F>
void for_each_injective(const std::vector<point>& base, std::size_t max_len, F&& f)
{
    ptuple t;
    std::vector<bool> used(base.size(), false);
    auto rec = [&](auto& self) -> void {
        if (!t.empty())
            f(t);
        if (t.size() == max_len)
            return;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (used[i])
                continue;
            used[i] = true;
            t.push_back(base[i]);
            self(self);
            t.pop_back();
            used[i] = false;
        }
    };
    rec(rec);
}

inline std::vector<point> normalized_subset(const finite_action& act, std::vector<point> a)
{
    std::sort(a.begin(), a.end());
    require(std::adjacent_find(a.begin(), a.end()) == a.end(), "subset: repeated point");
    for (point x : a)
        require(x < act.set_size(), "subset: point out of range");
    return a;
}

} // namespace detail

inline orbit_structure build_orbit_structure(const finite_action& act, const std::vector<point>& subset)
{
    orbit_structure m;
    m.base = detail::normalized_subset(act, subset);
    detail::for_each_injective(m.base, m.base.size(), [&](const ptuple& t) { m.orbits[t] = orbit_canon(act, t); });
    return m;
}

/// Some group element carrying A onto B setwise (smallest index).
inline std::optional<std::size_t> equiv_sets(const finite_action& act, const std::vector<point>& a,
                                             const std::vector<point>& b)
{
    const auto sa = detail::normalized_subset(act, a), sb = detail::normalized_subset(act, b);
    if (sa.size() != sb.size())
        return std::nullopt;
    for (std::size_t g = 0; g < act.group_size(); ++g) {
        auto img = act.apply(g, sa);
        std::sort(img.begin(), img.end());
        if (img == sb)
            return g;
    }
    return std::nullopt;
}

/// Some group element inducing the bijection a_i -> b_i, found by
/// intersecting the cosets {g : g.a_j = b_j for j < i} one pair at a time.
inline std::optional<std::size_t> lift_bijection(const finite_action& act,
                                                 const std::vector<std::pair<point, point>>& pairs)
{
    std::set<point> src, dst;
    for (auto [a, b] : pairs) {
        require(a < act.set_size() && b < act.set_size(), "lift_bijection: point out of range");
        require(src.insert(a).second, "lift_bijection: a source point is listed twice");
        require(dst.insert(b).second, "lift_bijection: a target point is listed twice");
    }
    std::vector<std::size_t> coset(act.group_size());
    for (std::size_t g = 0; g < coset.size(); ++g)
        coset[g] = g;
    for (auto [a, b] : pairs) {
        std::vector<std::size_t> next;
        for (auto g : coset)
            if (act.apply(g, a) == b)
                next.push_back(g);
        coset = std::move(next);
        if (coset.empty())
            return std::nullopt;
    }
    return coset.front();
}

/// Materializes orbit structures over one shared signature (a relation
/// R<n>_<rep> for each orbit datum occurring in any of them) so that the
/// core engine can compare them. Elements are base points in sorted order.
inline std::vector<core::finite_structure> materialize(const std::vector<const orbit_structure*>& ms)
{
    std::map<ptuple, std::size_t> reps;
    for (const auto* m : ms) {
        require(!m->base.empty(), "materialize: empty orbit structure has no finite model");
        for (const auto& [t, r] : m->orbits)
            reps.emplace(r, 0);
    }
    std::vector<core::symbol> syms;
    for (auto& [r, idx] : reps) {
        idx = syms.size();
        std::string name = "R" + std::to_string(r.size()) + "_";
        for (std::size_t i = 0; i < r.size(); ++i)
            name += (i ? "." : "") + std::to_string(r[i]);
        syms.push_back({name, r.size()});
    }
    core::signature sig(std::move(syms));
    std::vector<core::finite_structure> out;
    for (const auto* m : ms) {
        std::map<point, core::element> pos;
        for (std::size_t i = 0; i < m->base.size(); ++i)
            pos[m->base[i]] = static_cast<core::element>(i);
        std::vector<std::set<core::tuple>> rel(sig.size());
        for (const auto& [t, r] : m->orbits) {
            core::tuple e;
            for (point x : t)
                e.push_back(pos.at(x));
            rel[reps.at(r)].insert(std::move(e));
        }
        out.emplace_back(sig, m->base.size(), std::move(rel));
    }
    return out;
}

inline bool orbit_structures_isomorphic(const orbit_structure& m, const orbit_structure& n)
{
    if (m.base.empty() || n.base.empty())
        return m.base.empty() && n.base.empty();
    if (m.base.size() != n.base.size())
        return false;
    auto ms = materialize({&m, &n});
    return core::css_equal(ms[0], ms[1]);
}

/// True iff n is isomorphic to M_A for some subset A of the action's points.
/// Every orbit datum of n must be a canonical injective orbit representative
/// whose projections match the data of n's sub-tuples; then a forth
/// construction picks ambient points one element at a time.
inline bool embeds_as_nice(const finite_action& act, const orbit_structure& n)
{
    std::vector<point> base = n.base;
    std::sort(base.begin(), base.end());
    require(std::adjacent_find(base.begin(), base.end()) == base.end(), "embeds_as_nice: repeated element");
    std::size_t expected = 0;
    detail::for_each_injective(base, base.size(), [&](const ptuple& t) {
        ++expected;
        require(n.orbits.count(t) != 0, "embeds_as_nice: missing orbit datum for an injective tuple");
    });
    require(n.orbits.size() == expected, "embeds_as_nice: orbit data on tuples outside the base");
    if (base.empty())
        return true;
    if (base.size() > act.set_size())
        return false;

    for (const auto& [t, r] : n.orbits) {
        if (r.size() != t.size())
            return false;
        for (point x : r)
            if (x >= act.set_size())
                return false;
        if (std::set<point>(r.begin(), r.end()).size() != r.size() || orbit_canon(act, r) != r)
            return false;
        // Dropping one coordinate must give the datum of the shorter tuple.
        for (std::size_t i = 0; i < t.size() && t.size() > 1; ++i) {
            ptuple ts = t, rs = r;
            ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(i));
            rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(i));
            if (n.orbits.at(ts) != orbit_canon(act, rs))
                return false;
        }
    }

    // Forth: choose images for base[0], base[1], ... keeping the datum of the
    // prefix tuple realized.
    ptuple prefix, image;
    std::vector<bool> used(act.set_size(), false);
    auto forth = [&](auto& self) -> bool {
        if (prefix.size() == base.size())
            return true;
        prefix.push_back(base[prefix.size()]);
        const ptuple& want = n.orbits.at(prefix);
        for (point x = 0; x < act.set_size(); ++x) {
            if (used[x])
                continue;
            image.push_back(x);
            if (orbit_canon(act, image) == want) {
                used[x] = true;
                if (self(self))
                    return true;
                used[x] = false;
            }
            image.pop_back();
        }
        prefix.pop_back();
        return false;
    };
    if (!forth(forth))
        return false;

    // The forth map is a candidate isomorphism onto M_A; verify every datum.
    std::map<point, point> f;
    for (std::size_t i = 0; i < base.size(); ++i)
        f[base[i]] = image[i];
    for (const auto& [t, r] : n.orbits) {
        ptuple img;
        for (point x : t)
            img.push_back(f.at(x));
        if (orbit_canon(act, img) != r)
            return false;
    }
    return true;
}

} // namespace scott::orbit
