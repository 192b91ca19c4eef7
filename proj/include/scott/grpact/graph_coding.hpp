#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scott/grpact/coloring.hpp"

namespace scott::grpact {

/// A finite simple graph on vertices 0..v-1.
class graph_instance {
public:
    graph_instance(std::size_t v, std::set<std::pair<std::size_t, std::size_t>> edges) : v_(v)
    {
        require(v >= 1, "graph: at least one vertex required");
        for (auto [a, b] : edges) {
            require(a < v && b < v, "graph: edge endpoint out of range");
            require(a != b, "graph: loops are not allowed");
            edges_.insert({std::min(a, b), std::max(a, b)});
        }
    }

    std::size_t vertices() const { return v_; }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    bool adjacent(std::size_t a, std::size_t b) const { return edges_.count({std::min(a, b), std::max(a, b)}) != 0; }

    /// The graph with vertex i renamed sigma[i].
    graph_instance relabel(const std::vector<std::size_t>& sigma) const
    {
        std::set<std::pair<std::size_t, std::size_t>> e;
        for (auto [a, b] : edges_)
            e.insert({sigma.at(a), sigma.at(b)});
        return graph_instance(v_, std::move(e));
    }

    bool operator==(const graph_instance&) const = default;

private:
    std::size_t v_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// Some sigma with g.relabel(sigma) == h, by trying every permutation.
inline std::optional<std::vector<std::size_t>> graph_isomorphism(const graph_instance& g, const graph_instance& h)
{
    if (g.vertices() != h.vertices() || g.edges().size() != h.edges().size())
        return std::nullopt;
    std::vector<std::size_t> p(g.vertices());
    std::iota(p.begin(), p.end(), 0);
    do {
        if (g.relabel(p) == h)
            return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

/// Eventually-zero branches of 2^w split into v dense blocks. A branch is
/// written as a finite binary string standing for string^0^w; its canonical
/// form drops trailing zeros. A branch s^1^0^w lies in block |s| mod v, and
/// the all-zero branch lies in block 0.
class block_scheme {
public:
    explicit block_scheme(std::size_t v) : v_(v) { require(v >= 1, "block scheme: at least one block required"); }

    std::size_t blocks() const { return v_; }

    static std::string canonical(const std::string& branch)
    {
        require_binary(branch, "block scheme");
        const auto last = branch.find_last_of('1');
        return last == std::string::npos ? std::string() : branch.substr(0, last + 1);
    }

    std::size_t block_of(const std::string& branch) const
    {
        const std::string c = canonical(branch);
        return c.empty() ? 0 : (c.size() - 1) % v_;
    }

    /// The first n branches of block i whose last 1 sits before depth d, in
    /// order of that position and then lexicographically; padded to length d.
    std::vector<std::string> representatives(std::size_t i, std::size_t n, std::size_t d) const
    {
        require(i < v_, "block scheme: block out of range");
        std::vector<std::string> out;
        for (std::size_t pos = i; pos < d && out.size() < n; pos += v_) {
            require(pos < 63, "block scheme: depth too large");
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << pos) && out.size() < n; ++r) {
                std::string s(d, '0');
                for (std::size_t j = 0; j < pos; ++j)
                    s[j] = ((r >> (pos - 1 - j)) & 1u) ? '1' : '0';
                s[pos] = '1';
                out.push_back(std::move(s));
            }
        }
        if (out.size() < n)
            throw limit_exceeded("block scheme: block " + std::to_string(i) + " has fewer than " + std::to_string(n) +
                                 " branches representable at depth " + std::to_string(d));
        return out;
    }

private:
    std::size_t v_;
};

/// The exact encoding of a graph: every pair of branches (eta, tau) of the
/// scheme contributes c^1 when they share a block, c^2 when their blocks are
/// adjacent and c^3 otherwise.
struct symbolic_family {
    graph_instance graph;
    block_scheme scheme;

    std::uint64_t expected_value(const std::string& eta, const std::string& tau) const
    {
        const std::size_t i = scheme.block_of(eta), j = scheme.block_of(tau);
        if (i == j)
            return 1;
        return graph.adjacent(i, j) ? 2 : 3;
    }
};

struct graph_encoding {
    symbolic_family symbolic;
    family materialized;
    std::vector<std::vector<std::string>> representatives; // per block
};

/// Materializes the encoding with `per_block` representatives per block
/// truncated at depth d; every within-block pair (including eta = tau) and
/// every cross-block pair is included once.
inline graph_encoding encode_graph_tk(const graph_instance& g, std::size_t per_block, std::size_t d)
{
    require(per_block >= 1, "encode_graph_tk: per_block must be >= 1");
    block_scheme scheme(g.vertices());
    std::vector<std::vector<std::string>> reps;
    for (std::size_t i = 0; i < g.vertices(); ++i)
        reps.push_back(scheme.representatives(i, per_block, d));
    symbolic_family sym{g, scheme};
    family f;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i; j < reps.size(); ++j)
            for (std::size_t a = 0; a < reps[i].size(); ++a)
                for (std::size_t b = (i == j ? a : 0); b < reps[j].size(); ++b)
                    f.push_back(pair_coloring(sym.expected_value(reps[i][a], reps[j][b]), reps[i][a], reps[j][b]));
    return {std::move(sym), std::move(f), std::move(reps)};
}

namespace detail {

// The branch pair of a pair coloring: its value and its one or two leaves.
struct pair_shape {
    std::uint64_t value;
    std::string eta, tau;
};

inline pair_shape read_pair(const coloring& c)
{
    require(!c.empty(), "decode_graph_tk: empty coloring in family");
    const auto vals = c.value_multiset();
    const std::uint64_t k = *vals.begin();
    require(k == *vals.rbegin() && k >= 1 && k <= 3, "decode_graph_tk: coloring is not constant with value 1..3");
    const auto leaves = c.leaves();
    require(leaves.size() <= 2 && leaves.front().size() == leaves.back().size(),
            "decode_graph_tk: coloring is not a pair coloring");
    require(pair_coloring(k, leaves.front(), leaves.back()) == c, "decode_graph_tk: coloring is not a pair coloring");
    return {k, leaves.front(), leaves.back()};
}

} // namespace detail

/// Recovers the graph from a materialized family: branches joined by value-1
/// colorings form the blocks (each must be a clique), and cross-block
/// colorings must agree on each block pair; a block pair with no c^2
/// coloring is a non-edge. Vertices are numbered by the smallest branch of
/// their block.
inline graph_instance decode_graph_tk(const family& f)
{
    std::map<std::string, std::size_t> id;
    std::vector<detail::pair_shape> pairs;
    for (const auto& c : f) {
        pairs.push_back(detail::read_pair(c));
        id.emplace(pairs.back().eta, 0);
        id.emplace(pairs.back().tau, 0);
    }
    require(!id.empty(), "decode_graph_tk: empty family");
    std::vector<std::string> branch;
    for (auto& [s, i] : id) {
        i = branch.size();
        branch.push_back(s);
    }
    std::vector<std::size_t> parent(branch.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::set<std::pair<std::size_t, std::size_t>> ones;
    for (const auto& p : pairs)
        if (p.value == 1) {
            const std::size_t a = id[p.eta], b = id[p.tau];
            ones.insert({std::min(a, b), std::max(a, b)});
            parent[find(a)] = find(b);
        }
    // Blocks numbered by their smallest branch; map iteration is sorted.
    std::map<std::size_t, std::size_t> block_of_root;
    std::vector<std::size_t> block(branch.size());
    for (std::size_t x = 0; x < branch.size(); ++x)
        block[x] = block_of_root.emplace(find(x), block_of_root.size()).first->second;
    for (std::size_t x = 0; x < branch.size(); ++x)
        for (std::size_t y = x + 1; y < branch.size(); ++y)
            if (block[x] == block[y] && !ones.count({x, y}))
                throw input_error("decode_graph_tk: value-1 colorings do not form cliques");

    const std::size_t v = block_of_root.size();
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cross;
    for (const auto& p : pairs) {
        if (p.value == 1)
            continue;
        std::size_t i = block[id[p.eta]], j = block[id[p.tau]];
        if (i == j)
            throw input_error("decode_graph_tk: a cross-block coloring joins one block");
        auto [it, fresh] = cross.try_emplace({std::min(i, j), std::max(i, j)}, p.value);
        if (it->second != p.value)
            throw input_error("decode_graph_tk: block pair carries both edge and non-edge colorings");
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& [ij, value] : cross)
        if (value == 2)
            edges.insert(ij);
    return graph_instance(v, std::move(edges));
}

/// A tree automorphism built lazily by back-and-forth so that it carries
/// block i onto block sigma(i). Branch queries are answered one at a time
/// and memoized; each new branch eta is sent to a branch that agrees with
/// f(nu) below n = max lg(eta ^ nu) over the branches nu answered so far,
/// differs from it at n, and lands in the required block.
class lazy_aut {
public:
    lazy_aut(std::vector<std::size_t> sigma, block_scheme scheme,
             const std::vector<std::pair<std::string, std::string>>& seed = {})
        : sigma_(std::move(sigma)), scheme_(scheme)
    {
        require(sigma_.size() == scheme_.blocks(), "lazy witness: permutation size differs from block count");
        std::vector<bool> hit(sigma_.size(), false);
        for (auto s : sigma_) {
            require(s < sigma_.size() && !hit[s], "lazy witness: sigma is not a permutation");
            hit[s] = true;
        }
        for (const auto& [a, b] : seed)
            add_seed(block_scheme::canonical(a), block_scheme::canonical(b));
    }

    const std::vector<std::size_t>& sigma() const { return sigma_; }
    const block_scheme& scheme() const { return scheme_; }

    /// Image of the branch eta^0^w, in canonical form.
    std::string branch(const std::string& eta)
    {
        const std::string c = block_scheme::canonical(eta);
        for (const auto& [src, dst] : pairs_)
            if (src == c)
                return dst;
        const std::size_t want = sigma_[scheme_.block_of(c)];
        std::string prefix;
        if (!pairs_.empty()) {
            std::size_t best = 0, n = 0;
            for (std::size_t j = 0; j < pairs_.size(); ++j) {
                const std::size_t m = meet(c, pairs_[j].first);
                if (j == 0 || m > n) {
                    n = m;
                    best = j;
                }
            }
            prefix = padded(pairs_[best].second, n + 1);
            prefix[n] = prefix[n] == '0' ? '1' : '0';
        }
        std::string image = choose(prefix, c, want);
        pairs_.emplace_back(c, image);
        return image;
    }

    /// Image of a node s: f(s^0^w) cut to length |s|.
    std::string node(const std::string& s)
    {
        return padded(branch(s), s.size());
    }

    /// The partial element given by the node images of every prefix of the
    /// given strings. Throws if the answers are not prefix- and
    /// length-preserving (never expected).
    partial_elem partial_on(const std::vector<std::string>& strings)
    {
        std::map<std::string, std::string> m;
        for (const auto& s : strings)
            for (std::size_t k = 0; k <= s.size(); ++k)
                m.emplace(s.substr(0, k), node(s.substr(0, k)));
        return partial_elem(std::move(m));
    }

    const std::vector<std::pair<std::string, std::string>>& answered() const { return pairs_; }

private:
    // The first n symbols of the branch s^0^w.
    static std::string padded(const std::string& s, std::size_t n)
    {
        std::string out = s;
        out.resize(n, '0');
        return out;
    }

    // Length of the common prefix of two branches (both zero-padded);
    // SIZE_MAX for equal branches.
    static std::size_t meet(const std::string& a, const std::string& b)
    {
        const std::size_t n = std::max(a.size(), b.size()) + 1;
        const std::string x = padded(a, n), y = padded(b, n);
        std::size_t k = 0;
        while (k < n && x[k] == y[k])
            ++k;
        return k == n ? SIZE_MAX : k;
    }

    // A branch extending prefix in block `want`: eta's own continuation if it
    // qualifies, else prefix^0^w, else the shortest prefix^0^j^1.
    std::string choose(const std::string& prefix, const std::string& eta, std::size_t want) const
    {
        std::string own = prefix;
        if (eta.size() > prefix.size())
            own += eta.substr(prefix.size());
        if (scheme_.block_of(own) == want)
            return block_scheme::canonical(own);
        if (scheme_.block_of(prefix) == want)
            return block_scheme::canonical(prefix);
        for (std::size_t j = 0;; ++j) {
            std::string cand = prefix + std::string(j, '0') + '1';
            if (scheme_.block_of(cand) == want)
                return cand;
        }
    }

    void add_seed(const std::string& a, const std::string& b)
    {
        require(sigma_[scheme_.block_of(a)] == scheme_.block_of(b), "lazy witness: seed pair violates sigma on blocks");
        for (const auto& [src, dst] : pairs_) {
            require(src != a, "lazy witness: seed maps a branch twice");
            require(meet(src, a) == meet(dst, b), "lazy witness: seed pairs do not preserve meets");
        }
        pairs_.emplace_back(a, b);
    }

    std::vector<std::size_t> sigma_;
    block_scheme scheme_;
    std::vector<std::pair<std::string, std::string>> pairs_;
};

inline lazy_aut lazy_claim_witness(const std::vector<std::size_t>& sigma, const block_scheme& scheme,
                                   const std::vector<std::pair<std::string, std::string>>& seed = {})
{
    return lazy_aut(sigma, scheme, seed);
}

/// Checks a lazy witness against the encodings of g and its image graph:
/// every materialized coloring c^k_{eta,tau} of g must map, under the node
/// images, to the pair coloring of (f(eta), f(tau)) with the value the image
/// encoding assigns to the image branches.
inline bool witness_maps_family(lazy_aut& f, const graph_encoding& source, const symbolic_family& target)
{
    for (const auto& c : source.materialized) {
        const auto shape = detail::read_pair(c);
        const std::string fe = f.branch(shape.eta), ft = f.branch(shape.tau);
        if (target.expected_value(fe, ft) != shape.value)
            return false;
        auto g = f.partial_on({shape.eta, shape.tau});
        auto img = act(g, c);
        if (!img || *img != pair_coloring(shape.value, f.node(shape.eta), f.node(shape.tau)))
            return false;
    }
    return true;
}

/// True iff some automorphism of the depth-d tree maps the leaf set of each
/// block i onto the leaf set of block sigma(i) (exhaustive over TOTAL(d)).
inline bool total_realizes(const std::vector<std::vector<std::string>>& blocks, const std::vector<std::size_t>& sigma,
                           std::size_t d)
{
    require(d <= 4, "total_realizes: depth above 4 is refused");
    std::vector<std::set<std::string>> sets;
    for (const auto& b : blocks)
        sets.emplace_back(b.begin(), b.end());
    const std::uint64_t count = std::uint64_t{1} << ((std::size_t{1} << d) - 1);
    for (std::uint64_t code = 0; code < count; ++code) {
        const auto g = total_elem::from_code(d, code);
        bool ok = true;
        for (std::size_t i = 0; i < sets.size() && ok; ++i) {
            std::set<std::string> img;
            for (const auto& s : sets[i])
                img.insert(g.image(s));
            ok = img == sets[sigma[i]];
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace scott::grpact
