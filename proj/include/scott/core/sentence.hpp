#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <span>
#include <unordered_map>
#include <vector>

#include "scott/core/refinement.hpp"

namespace scott::core {

/// Node kinds of a sentence DAG. Quantifier nodes bind the next positional
/// variable x_k over elements distinct from x_0..x_{k-1}:
///   exists(k, phi)  =  Ex x_k (x_k not in {x_0..x_{k-1}} and phi)
///   forall(k, phi)  =  Ax x_k (x_k in {x_0..x_{k-1}} or phi)
/// atoms(k, bits) is the conjunction, over the atoms_introduced(sig, k)
/// schema, of each atom (bit set) or its negation (bit clear), together with
/// x_i != x_j for i < j < k.
/// implies(a, b) is the material conditional a -> b.
enum class node_kind : std::uint8_t { atoms = 1, and_set = 2, or_set = 3, exists = 4, forall = 5, implies = 6 };

/// Hash-consed formula DAG. Set-valued nodes (and/or) have their children
/// deduplicated, so structurally equal formulas always share one node.
/// A node is stored as the word sequence
/// [kind, arity, #bits, bits..., children...].
class formula_dag {
public:
    using node_id = std::uint32_t;

    node_id atoms(std::uint32_t k, std::span<const std::uint32_t> bits) { return make(node_kind::atoms, k, bits, {}); }
    node_id conjunction(std::vector<node_id> children) { return set_node(node_kind::and_set, std::move(children)); }
    node_id disjunction(std::vector<node_id> children) { return set_node(node_kind::or_set, std::move(children)); }
    node_id exists(std::uint32_t k, node_id body) { return make(node_kind::exists, k, {}, std::span(&body, 1)); }
    node_id forall(std::uint32_t k, node_id body) { return make(node_kind::forall, k, {}, std::span(&body, 1)); }
    node_id implies(node_id lhs, node_id rhs)
    {
        const node_id c[2] = {lhs, rhs};
        return make(node_kind::implies, 0, {}, c);
    }

    std::size_t node_count() const { return store_.size(); }

    node_kind kind(node_id v) const { return static_cast<node_kind>(store_.key(v)[0]); }
    std::uint32_t arity(node_id v) const { return store_.key(v)[1]; }
    std::span<const std::uint32_t> bits(node_id v) const { return store_.key(v).subspan(3, store_.key(v)[2]); }
    std::span<const std::uint32_t> children(node_id v) const { return store_.key(v).subspan(3 + store_.key(v)[2]); }

    /// Canonical bytes of the sub-DAG under root.
    ///
    /// Reachable nodes are ranked by height, then by the word sequence
    /// (kind, arity, #bits, bits, child ranks); the rank order depends only on formula content, so equal
    /// formulas serialize identically regardless of construction order. Each
    /// node is emitted in rank order with length-prefixed fields; set
    /// children are listed by ascending rank.
    std::vector<std::uint8_t> serialize(node_id root) const
    {
        std::vector<std::uint32_t> height(node_count(), 0);
        std::vector<node_id> reach = collect(root); // post-order: children before parents
        std::uint32_t max_h = 0;
        for (node_id v : reach) {
            for (node_id c : children(v))
                height[v] = std::max(height[v], height[c] + 1);
            max_h = std::max(max_h, height[v]);
        }
        std::vector<std::vector<node_id>> by_height(max_h + 1);
        for (node_id v : reach)
            by_height[height[v]].push_back(v);

        std::vector<std::uint32_t> rank(node_count(), 0);
        std::vector<std::uint32_t> pool;
        std::vector<std::size_t> at(node_count(), 0), len(node_count(), 0);
        std::vector<node_id> ordered;
        ordered.reserve(reach.size());
        for (auto& group : by_height) {
            // Sort key: [kind, arity, #bits, bits..., child ranks...], with
            // set children in ascending rank order.
            pool.clear();
            for (node_id v : group) {
                at[v] = pool.size();
                const auto k = store_.key(v);
                const auto nb = 3 + k[2];
                pool.insert(pool.end(), k.begin(), k.begin() + nb);
                for (node_id c : children(v))
                    pool.push_back(rank[c]);
                if (is_set(kind(v)))
                    std::sort(pool.begin() + static_cast<std::ptrdiff_t>(at[v] + nb), pool.end());
                len[v] = pool.size() - at[v];
            }
            std::sort(group.begin(), group.end(), [&](node_id a, node_id b) {
                return std::lexicographical_compare(pool.data() + at[a], pool.data() + at[a] + len[a],
                                                    pool.data() + at[b], pool.data() + at[b] + len[b]);
            });
            for (node_id v : group) {
                rank[v] = static_cast<std::uint32_t>(ordered.size());
                ordered.push_back(v);
            }
        }

        std::vector<std::uint8_t> out = {'C', 'S', 'S', '1'};
        put(out, ordered.size());
        std::vector<std::uint32_t> cr;
        for (node_id v : ordered) {
            out.push_back(static_cast<std::uint8_t>(kind(v)));
            put(out, arity(v));
            put(out, bits(v).size());
            for (auto w : bits(v))
                put(out, w);
            cr.clear();
            for (node_id c : children(v))
                cr.push_back(rank[c]);
            if (is_set(kind(v)))
                std::sort(cr.begin(), cr.end());
            put(out, cr.size());
            for (auto r : cr)
                put(out, r);
        }
        put(out, rank[root]);
        return out;
    }

private:
    static bool is_set(node_kind k) { return k == node_kind::and_set || k == node_kind::or_set; }

    static void put(std::vector<std::uint8_t>& out, std::uint64_t v)
    {
        do {
            std::uint8_t b = v & 0x7f;
            v >>= 7;
            out.push_back(v ? (b | 0x80) : b);
        } while (v);
    }

    node_id set_node(node_kind k, std::vector<node_id> children)
    {
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        return make(k, 0, {}, children);
    }

    node_id make(node_kind k, std::uint32_t arity, std::span<const std::uint32_t> bits,
                 std::span<const node_id> children)
    {
        scratch_.clear();
        scratch_.push_back(static_cast<std::uint32_t>(k));
        scratch_.push_back(arity);
        scratch_.push_back(static_cast<std::uint32_t>(bits.size()));
        scratch_.insert(scratch_.end(), bits.begin(), bits.end());
        scratch_.insert(scratch_.end(), children.begin(), children.end());
        return store_.intern(scratch_);
    }

    std::vector<node_id> collect(node_id root) const
    {
        // Iterative post-order; sentence DAGs can be deep.
        std::vector<node_id> out;
        std::vector<bool> seen(node_count(), false);
        std::vector<std::pair<node_id, std::size_t>> stack{{root, 0}};
        seen[root] = true;
        while (!stack.empty()) {
            auto& [u, i] = stack.back();
            const auto cs = children(u);
            if (i < cs.size()) {
                node_id c = cs[i++];
                if (!seen[c]) {
                    seen[c] = true;
                    stack.push_back({c, 0});
                }
            } else {
                out.push_back(u);
                stack.pop_back();
            }
        }
        return out;
    }

    detail::key_interner store_;
    std::vector<std::uint32_t> scratch_;
};

/// Canonical Scott sentence of a finite structure, as canonical DAG bytes.
/// Two sentences are the same sentence iff their bytes are equal.
class scott_sentence_value {
public:
    scott_sentence_value() = default;
    explicit scott_sentence_value(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

    std::string hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        s.reserve(bytes_.size() * 2);
        for (auto b : bytes_) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 15]);
        }
        return s;
    }

    bool operator==(const scott_sentence_value&) const = default;
    auto operator<=>(const scott_sentence_value&) const = default;

private:
    std::vector<std::uint8_t> bytes_;
};

namespace detail {

// Materializes phi_a^t for the types of one refinement trace.
class sentence_builder {
public:
    sentence_builder(const refinement_trace& tr, const signature& sig) : tr_(tr), sig_(sig)
    {
        memo_.resize(tr.stage_count());
    }

    formula_dag& dag() { return dag_; }

    formula_dag::node_id type_formula(std::size_t stage, type_id t)
    {
        auto& memo = memo_[stage];
        if (auto it = memo.find(t); it != memo.end())
            return it->second;
        formula_dag::node_id out;
        const auto k = static_cast<std::uint32_t>(tr_.type_length(stage, t));
        if (stage == 0) {
            // The diagram of a tuple is its prefix's diagram plus the
            // literals that mention its last variable.
            const auto& def = tr_.definition(0, t);
            auto own = dag_.atoms(k, std::span(def).subspan(1));
            out = k == 0 ? own : dag_.conjunction({type_formula(0, def[0]), own});
        } else {
            const auto& def = tr_.definition(stage, t);
            std::vector<formula_dag::node_id> ex, alts;
            for (std::size_t i = 1; i < def.size(); ++i) {
                auto f = type_formula(stage - 1, def[i]);
                ex.push_back(dag_.exists(k, f));
                alts.push_back(f);
            }
            out = dag_.conjunction({type_formula(stage - 1, def[0]), dag_.conjunction(std::move(ex)),
                                    dag_.forall(k, dag_.disjunction(std::move(alts)))});
        }
        memo.emplace(t, out);
        return out;
    }

    /// Ax_0..x_{k-1} [phi_a^t -> phi_{a+1}^t'] where t' is t's successor type.
    formula_dag::node_id stability_clause(std::size_t stage, type_id t, type_id next)
    {
        const auto k = static_cast<std::uint32_t>(tr_.type_length(stage, t));
        auto body = dag_.implies(type_formula(stage, t), type_formula(stage + 1, next));
        for (std::uint32_t i = k; i-- > 0;)
            body = dag_.forall(i, body);
        return body;
    }

private:
    const refinement_trace& tr_;
    const signature& sig_;
    formula_dag dag_;
    std::vector<std::unordered_map<type_id, formula_dag::node_id>> memo_;
};

} // namespace detail

/// css of structure s in a trace whose length bound covers its universe:
/// phi_{a*}^{()} and, for every tuple type, Ax [phi_{a*} -> phi_{a*+1}].
inline scott_sentence_value sentence_from_trace(const refinement_trace& tr, const signature& sig, std::size_t s)
{
    const std::size_t a = tr.fixpoint_stage();
    detail::sentence_builder b(tr, sig);
    const auto& sp = tr.space(s);
    std::vector<formula_dag::node_id> parts;
    parts.push_back(b.type_formula(a, tr.type_of(a, s, 0)));
    std::vector<std::pair<type_id, type_id>> seen;
    for (std::size_t t = 0; t < sp.count(); ++t)
        seen.emplace_back(tr.type_of(a, s, t), tr.type_of(a + 1, s, t));
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    std::vector<formula_dag::node_id> clauses;
    for (auto [t, next] : seen)
        clauses.push_back(b.stability_clause(a, t, next));
    parts.push_back(b.dag().conjunction(std::move(clauses)));
    auto root = b.dag().conjunction(std::move(parts));
    return scott_sentence_value(b.dag().serialize(root));
}

/// Scott sentence and Scott rank (the refinement fixpoint stage) of m.
struct scott_analysis {
    scott_sentence_value sentence;
    std::size_t fixpoint_stage;
};

inline scott_analysis analyze(const finite_structure& m)
{
    std::vector<finite_structure> one{m};
    auto tr = joint_refine(one, m.size());
    return {sentence_from_trace(tr, m.sig(), 0), tr.fixpoint_stage()};
}

inline scott_sentence_value scott_sentence(const finite_structure& m)
{
    return analyze(m).sentence;
}

inline bool css_equal(const finite_structure& m, const finite_structure& n)
{
    require_same_signature(m, n);
    return scott_sentence(m) == scott_sentence(n);
}

} // namespace scott::core
