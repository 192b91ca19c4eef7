#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "scott/ref/presentation.hpp"

namespace scott::ref {

/// Canonical data invariant of a presentation.
///
/// Levels are interned bottom-up: a leaf node is a color, an internal node
/// is the sorted list of (child node id, multiplicity). Node ids on a level
/// are ranks in sorted order, so two presentations have equal data iff a
/// color-preserving automorphism of the address tree carries one onto the
/// other. Level 0 holds the single root.
class ref_data {
public:
    using node_id = std::uint32_t;
    using children = std::vector<std::pair<node_id, std::uint64_t>>;
    using path = std::vector<node_id>; // node ids from level 1 down

    ref_data(variant v, std::size_t width, std::size_t depth, std::vector<std::vector<children>> internal,
             std::vector<ext_nat> leaves)
        : variant_(v), width_(width), depth_(depth), internal_(std::move(internal)), leaves_(std::move(leaves))
    {
        require(internal_.size() == depth_, "ref data: one internal level per depth step required");
    }

    variant kind() const { return variant_; }
    std::size_t width() const { return width_; }
    std::size_t depth() const { return depth_; }

    /// Nodes of internal level k < depth.
    const std::vector<children>& level(std::size_t k) const { return internal_[k]; }
    const std::vector<ext_nat>& leaves() const { return leaves_; }
    std::size_t node_count(std::size_t k) const { return k < depth_ ? internal_[k].size() : leaves_.size(); }

    /// The level-n types: root paths of n steps, in lexicographic order.
    /// Their prefix order is the tree (I, <=).
    std::vector<path> level_types(std::size_t n) const
    {
        require(n <= depth_, "ref data: level beyond depth");
        std::vector<path> cur{{}};
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<path> next;
            for (const auto& p : cur) {
                const node_id at = p.empty() ? 0 : p.back();
                for (const auto& [c, m] : internal_[k][at]) {
                    next.push_back(p);
                    next.back().push_back(c);
                }
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// How many children of the parent type carry the last type of p.
    std::uint64_t mult(const path& p) const
    {
        require(!p.empty() && p.size() <= depth_, "ref data: mult needs a path of length 1..depth");
        const node_id parent = p.size() == 1 ? 0 : p[p.size() - 2];
        for (const auto& [c, m] : internal_[p.size() - 1][parent])
            if (c == p.back())
                return m;
        throw input_error("ref data: path is not a type sequence");
    }

    /// Full-length type sequences (one per class of branches).
    std::vector<path> seqs() const { return level_types(depth_); }

    /// Colors realized along a full type sequence. At finite depth a full
    /// sequence ends in one leaf node, so the spectrum is a singleton.
    std::set<ext_nat> spectrum(const path& p) const
    {
        require(p.size() == depth_, "ref data: spectrum needs a full-length sequence");
        mult(p);
        return {leaves_.at(p.back())};
    }

    bool operator==(const ref_data&) const = default;

private:
    variant variant_;
    std::size_t width_;
    std::size_t depth_;
    std::vector<std::vector<children>> internal_;
    std::vector<ext_nat> leaves_;
};

inline ref_data compute_data(const presentation& p)
{
    const std::size_t w = p.width(), d = p.depth();

    std::vector<ext_nat> leaves = p.colors();
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    std::vector<ref_data::node_id> ids(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        ids[i] = static_cast<ref_data::node_id>(std::lower_bound(leaves.begin(), leaves.end(), p.color(i)) -
                                                leaves.begin());

    std::vector<std::vector<ref_data::children>> internal(d);
    for (std::size_t k = d; k-- > 0;) {
        const std::size_t parents = ids.size() / w;
        std::vector<ref_data::children> raw(parents);
        for (std::size_t q = 0; q < parents; ++q) {
            std::map<ref_data::node_id, std::uint64_t> counts;
            for (std::size_t j = 0; j < w; ++j)
                ++counts[ids[q * w + j]];
            raw[q].assign(counts.begin(), counts.end());
        }
        auto level = raw;
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
        std::vector<ref_data::node_id> up(parents);
        for (std::size_t q = 0; q < parents; ++q)
            up[q] = static_cast<ref_data::node_id>(std::lower_bound(level.begin(), level.end(), raw[q]) -
                                                   level.begin());
        internal[k] = std::move(level);
        ids = std::move(up);
    }
    return ref_data(p.kind(), w, d, std::move(internal), std::move(leaves));
}

/// Rebuilds a presentation from data: children of every node are laid out
/// in canonical order (ascending node id, each repeated by its multiplicity).
inline presentation unpack_data(const ref_data& data)
{
    const std::size_t w = data.width(), d = data.depth();
    require(data.kind() == variant::inf || w == 2, "unpack: BIN data must have width 2");
    require(w >= 2 && w <= 10 && d >= 1, "unpack: bad shape");
    require(data.level(0).size() == 1, "unpack: level 0 must hold exactly one root");
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t below = data.node_count(k + 1);
        for (const auto& node : data.level(k)) {
            std::uint64_t total = 0;
            for (const auto& [c, m] : node) {
                require(c < below, "unpack: child id out of range at level " + std::to_string(k));
                require(m >= 1, "unpack: multiplicities must be >= 1");
                total += m;
            }
            require(total == w, "unpack: a node at level " + std::to_string(k) + " has " + std::to_string(total) +
                                    " children, expected " + std::to_string(w));
        }
    }
    for (const auto& c : data.leaves())
        require(c >= ext_nat(1), "unpack: leaf colors must be >= 1");

    std::vector<ref_data::node_id> cur{0};
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<ref_data::node_id> next;
        next.reserve(cur.size() * w);
        for (auto id : cur)
            for (const auto& [c, m] : data.level(k)[id])
                next.insert(next.end(), m, c);
        cur = std::move(next);
    }
    std::vector<ext_nat> colors;
    colors.reserve(cur.size());
    for (auto id : cur)
        colors.push_back(data.leaves()[id]);
    presentation out(data.kind(), w, d, std::move(colors));
    if (!(compute_data(out) == data))
        throw input_error("unpack: data is not in canonical form (unsorted, duplicated or unreachable nodes)");
    return out;
}

inline bool presentations_equiv(const presentation& p, const presentation& q)
{
    require(p.same_shape(q), "presentations_equiv: presentations differ in variant, width or depth");
    return compute_data(p) == compute_data(q);
}

} // namespace scott::ref
