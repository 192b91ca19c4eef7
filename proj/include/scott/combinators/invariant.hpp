#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scott/errors.hpp"
#include "scott/ext_nat.hpp"

namespace scott::comb {

enum class inv_kind { base, jump, prod };

/// Invariants of the T_alpha hierarchy: BASE(n) classifies a model of the
/// base theory by its number of chains, JUMP is a multiset of invariants with
/// capped multiplicities, PROD a sequence of invariants (one per sort).
/// Values are immutable and carry their canonical serialization, which is
/// also the total order used to sort JUMP entries.
class nested_invariant {
public:
    static nested_invariant base(ext_nat v)
    {
        require(v.is_omega() || v.value() >= 1, "invariant: BASE value must be >= 1");
        nested_invariant out(inv_kind::base);
        out.value_ = v;
        out.key_ = "b" + v.to_string();
        return out;
    }

    static nested_invariant jump(std::vector<std::pair<nested_invariant, ext_nat>> entries)
    {
        require(!entries.empty(), "invariant: JUMP needs at least one entry");
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first.key_ < b.first.key_; });
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& mult = entries[i].second;
            require(mult.is_omega() || mult.value() >= 1, "invariant: JUMP multiplicities must be >= 1");
            require(i == 0 || entries[i - 1].first.key_ != entries[i].first.key_, "invariant: JUMP entries must be distinct");
        }
        nested_invariant out(inv_kind::jump);
        out.key_ = "j(";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            auto& [child, mult] = entries[i];
            out.key_ += (i ? "," : "") + child.key_ + "^" + mult.to_string();
            out.depth_ = std::max(out.depth_, child.depth_ + 1);
            out.children_.push_back(std::move(child));
            out.mults_.push_back(mult);
        }
        out.key_ += ")";
        return out;
    }

    static nested_invariant prod(std::vector<nested_invariant> components)
    {
        require(!components.empty(), "invariant: PROD needs at least one component");
        nested_invariant out(inv_kind::prod);
        out.key_ = "p(";
        for (std::size_t i = 0; i < components.size(); ++i) {
            out.key_ += (i ? "," : "") + components[i].key_;
            out.depth_ = std::max(out.depth_, components[i].depth_ + 1);
        }
        out.key_ += ")";
        out.children_ = std::move(components);
        return out;
    }

    inv_kind kind() const { return kind_; }
    ext_nat value() const { return value_; }
    const std::vector<nested_invariant>& children() const { return children_; }
    const std::vector<ext_nat>& mults() const { return mults_; }
    const std::string& key() const { return key_; }
    std::size_t depth() const { return depth_; }

    bool has_omega() const
    {
        if (kind_ == inv_kind::base)
            return value_.is_omega();
        for (const auto& m : mults_)
            if (m.is_omega())
                return true;
        for (const auto& c : children_)
            if (c.has_omega())
                return true;
        return false;
    }

    bool operator==(const nested_invariant& o) const { return key_ == o.key_; }
    std::strong_ordering operator<=>(const nested_invariant& o) const { return key_ <=> o.key_; }

private:
    explicit nested_invariant(inv_kind k) : kind_(k) {}

    inv_kind kind_;
    ext_nat value_;
    std::vector<nested_invariant> children_;
    std::vector<ext_nat> mults_;
    std::string key_;
    std::size_t depth_ = 0;
};

inline void require_cap(std::uint64_t cap)
{
    require(cap >= 1, "cap: threshold must be a positive integer");
}

inline nested_invariant t0_invariant(std::uint64_t chains, std::uint64_t cap)
{
    require_cap(cap);
    require(chains >= 1, "t0_invariant: models of the base theory are nonempty");
    return nested_invariant::base(ext_nat(chains).capped(cap));
}

/// Multiset of the items with multiplicities capped at the threshold.
inline nested_invariant jump_invariant(const std::vector<nested_invariant>& items, std::uint64_t cap)
{
    require_cap(cap);
    require(!items.empty(), "jump_invariant: at least one item is required");
    std::map<std::string, std::pair<const nested_invariant*, std::uint64_t>> count;
    for (const auto& it : items) {
        auto& slot = count[it.key()];
        slot.first = &it;
        ++slot.second;
    }
    std::vector<std::pair<nested_invariant, ext_nat>> entries;
    for (const auto& [key, slot] : count)
        entries.emplace_back(*slot.first, ext_nat(slot.second).capped(cap));
    return nested_invariant::jump(std::move(entries));
}

inline nested_invariant product_invariant(std::vector<nested_invariant> components)
{
    require(!components.empty(), "product_invariant: at least one component is required");
    return nested_invariant::prod(std::move(components));
}

/// Number of distinct invariants at nesting level k over base_count base
/// values: level 0 has base_count, level k+1 has (cap+1)^(level k) - 1.
inline std::uint64_t count_level(std::uint64_t k, std::uint64_t base_count, std::uint64_t cap)
{
    require(base_count >= 1, "count_level: base count must be >= 1");
    require(cap >= 2 && cap < UINT64_MAX, "count_level: cap must be >= 2");
    std::uint64_t level = base_count;
    for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t p = 1;
        for (std::uint64_t e = 0; e < level; ++e) {
            if (p > UINT64_MAX / (cap + 1))
                throw limit_exceeded("count_level: level " + std::to_string(i + 1) + " exceeds 64 bits");
            p *= cap + 1;
        }
        level = p - 1;
    }
    return level;
}

} // namespace scott::comb
