#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scott/ref/presentation.hpp"

namespace scott::ref {

/// A finite prefix-closed set of strings over {0..w-1} (one digit per
/// symbol) containing the empty string.
class labeled_tree {
public:
    explicit labeled_tree(std::set<std::string> nodes) : nodes_(std::move(nodes))
    {
        require(nodes_.count("") == 1, "tree: the empty string must be a node");
        for (const auto& s : nodes_) {
            for (char ch : s)
                require(ch >= '0' && ch <= '9', "tree: node '" + s + "' is not a digit string");
            if (!s.empty())
                require(nodes_.count(s.substr(0, s.size() - 1)) == 1, "tree: node '" + s + "' has no parent");
        }
    }

    const std::set<std::string>& nodes() const { return nodes_; }
    bool contains(const std::string& s) const { return nodes_.count(s) != 0; }

    std::size_t height() const
    {
        std::size_t h = 0;
        for (const auto& s : nodes_)
            h = std::max(h, s.size());
        return h;
    }

    /// Largest symbol used, or -1 for the one-node tree.
    int max_symbol() const
    {
        int m = -1;
        for (const auto& s : nodes_)
            for (char ch : s)
                m = std::max(m, ch - '0');
        return m;
    }

    /// Canonical representative of the abstract tree: the children of every
    /// node are relabeled 0, 1, ... in ascending order of their subtree codes.
    labeled_tree canonical() const
    {
        std::set<std::string> out{""};
        emit(out, "", "");
        return labeled_tree(std::move(out));
    }

    bool operator==(const labeled_tree&) const = default;

private:
    std::vector<std::string> kids(const std::string& s) const
    {
        std::vector<std::string> out;
        for (auto it = nodes_.upper_bound(s); it != nodes_.end() && it->compare(0, s.size(), s) == 0; ++it)
            if (it->size() == s.size() + 1)
                out.push_back(*it);
        return out;
    }

    std::string code(const std::string& s) const
    {
        std::vector<std::string> parts;
        for (const auto& c : kids(s))
            parts.push_back(code(c));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (const auto& p : parts)
            out += p;
        return out + ")";
    }

    void emit(std::set<std::string>& out, const std::string& src, const std::string& dst) const
    {
        std::vector<std::pair<std::string, std::string>> ordered;
        for (const auto& c : kids(src))
            ordered.emplace_back(code(c), c);
        std::sort(ordered.begin(), ordered.end());
        require(ordered.size() <= 10, "tree: more than 10 children at one node");
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            std::string next = dst + static_cast<char>('0' + i);
            out.insert(next);
            emit(out, ordered[i].second, next);
        }
    }

    std::set<std::string> nodes_;
};

/// Binary strings of length d in lexicographic order, as indices.
inline std::size_t binary_rank(const std::string& s)
{
    std::size_t r = 0;
    for (char ch : s)
        r = r * 2 + static_cast<std::size_t>(ch - '0');
    return r;
}

inline std::string binary_string(std::size_t r, std::size_t d)
{
    std::string s(d, '0');
    for (std::size_t i = d; i-- > 0; r >>= 1)
        s[i] = static_cast<char>('0' + (r & 1));
    return s;
}

/// BIN presentation of depth d+1 coding a set I of length-d binary strings:
/// eta0 gets the injective base color 2 + rank(eta), eta1 gets OMEGA when
/// eta is in I and 1 otherwise.
inline presentation encode_set_refbin(const std::set<std::string>& set, std::size_t d)
{
    require(d >= 1, "encode_set_refbin: depth must be >= 1");
    require(d < 21, "encode_set_refbin: depth above 20 is not supported");
    for (const auto& s : set) {
        require(s.size() == d, "encode_set_refbin: '" + s + "' does not have length " + std::to_string(d));
        require(s.find_first_not_of("01") == std::string::npos, "encode_set_refbin: '" + s + "' is not binary");
    }
    const std::size_t n = std::size_t{1} << d;
    std::vector<ext_nat> colors(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        colors[2 * r] = ext_nat(2 + r);
        colors[2 * r + 1] = set.count(binary_string(r, d)) ? ext_nat::omega() : ext_nat(1);
    }
    return presentation::bin(d + 1, std::move(colors));
}

/// Inverse of encode_set_refbin, invariant under color-preserving tree
/// automorphisms: in each sibling pair the base color names the original
/// string, and an OMEGA sibling marks membership.
inline std::set<std::string> decode_set_refbin(const presentation& p)
{
    if (p.kind() != variant::bin || p.depth() < 2)
        throw malformed_presentation("decode_set_refbin: expected a BIN presentation of depth >= 2");
    const std::size_t d = p.depth() - 1;
    const std::size_t n = std::size_t{1} << d;
    std::vector<bool> named(n, false);
    std::set<std::string> out;
    for (std::size_t q = 0; q < n; ++q) {
        const ext_nat a = p.color(2 * q), b = p.color(2 * q + 1);
        const bool a_base = a.is_finite() && a >= ext_nat(2);
        const bool b_base = b.is_finite() && b >= ext_nat(2);
        if (a_base == b_base)
            throw malformed_presentation("decode_set_refbin: sibling pair " + p.address(2 * q).substr(0, d) +
                                         " must hold exactly one base color");
        const ext_nat base = a_base ? a : b, mark = a_base ? b : a;
        const std::uint64_t r = base.value() - 2;
        if (r >= n || named[r])
            throw malformed_presentation("decode_set_refbin: base colors are not injective onto 2.." +
                                         std::to_string(n + 1));
        named[r] = true;
        if (mark.is_omega())
            out.insert(binary_string(r, d));
        else if (!(mark == ext_nat(1)))
            throw malformed_presentation("decode_set_refbin: marker colors must be 1 or omega");
    }
    return out;
}

/// INF(w) presentation of depth d for the tree S: after canonicalizing S, an
/// address gets color 2 when it leaves S through a nonzero symbol (some
/// k < d with eta|k outside S and eta(k) != 0), and color 1 otherwise.
inline presentation encode_tree_refinf(const labeled_tree& tree, std::size_t d, std::size_t w)
{
    require(w >= 2 && w <= 10, "encode_tree_refinf: width must be in 2..10");
    require(d >= 1, "encode_tree_refinf: depth must be >= 1");
    require(tree.max_symbol() < static_cast<int>(w), "encode_tree_refinf: tree uses symbols outside {0..w-1}");
    require(tree.height() < d, "encode_tree_refinf: tree nodes must be shorter than the depth");
    const labeled_tree s = tree.canonical();
    const std::size_t n = presentation::leaf_count(w, d);
    std::vector<ext_nat> colors(n);
    std::string eta(d, '0');
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t x = i;
        for (std::size_t j = d; j-- > 0; x /= w)
            eta[j] = static_cast<char>('0' + x % w);
        bool exits = false;
        for (std::size_t k = 0; k < d && !exits; ++k)
            exits = eta[k] != '0' && !s.contains(eta.substr(0, k));
        colors[i] = ext_nat(exits ? 2 : 1);
    }
    return presentation::inf(w, d, std::move(colors));
}

/// The tree Tr(P): s is a node iff |s| < d and every one-symbol extension of
/// s is extended by some color-1 address; the prefix-closed part is returned
/// in canonical form. nullopt means the root itself fails (NO_ROOT).
inline std::optional<labeled_tree> tree_invariant(const presentation& p)
{
    require(p.kind() == variant::inf, "tree_invariant: BIN presentations are not tree codes");
    const std::size_t w = p.width(), d = p.depth();
    // ones[k][q]: some color-1 address lies below the k-prefix with index q.
    std::vector<std::vector<bool>> ones(d + 1);
    ones[d].resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        ones[d][i] = p.color(i) == ext_nat(1);
    for (std::size_t k = d; k-- > 0;) {
        ones[k].assign(ones[k + 1].size() / w, false);
        for (std::size_t i = 0; i < ones[k + 1].size(); ++i)
            if (ones[k + 1][i])
                ones[k][i / w] = true;
    }
    auto member = [&](std::size_t k, std::size_t q) {
        for (std::size_t a = 0; a < w; ++a)
            if (!ones[k + 1][q * w + a])
                return false;
        return true;
    };
    if (!member(0, 0))
        return std::nullopt;
    std::set<std::string> nodes{""};
    std::vector<std::pair<std::string, std::size_t>> frontier{{"", 0}};
    while (!frontier.empty()) {
        auto [s, q] = frontier.back();
        frontier.pop_back();
        if (s.size() + 1 >= d)
            continue;
        for (std::size_t a = 0; a < w; ++a)
            if (member(s.size() + 1, q * w + a)) {
                std::string c = s + static_cast<char>('0' + a);
                nodes.insert(c);
                frontier.emplace_back(c, q * w + a);
            }
    }
    return labeled_tree(std::move(nodes)).canonical();
}

} // namespace scott::ref
