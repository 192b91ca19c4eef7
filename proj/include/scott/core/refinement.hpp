#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "scott/core/structure.hpp"

namespace scott::core {

using type_id = std::uint32_t;

namespace detail {

inline std::uint64_t hash_words(std::span<const std::uint32_t> v)
{
    std::uint64_t h = 0xcbf29ce484222325ull ^ v.size();
    for (std::uint32_t x : v) {
        h ^= x;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return h;
}

// Assigns dense ids to word sequences in order of first appearance. Keys
// live in one pool; lookup is open addressing on a power-of-two table.
class key_interner {
public:
    std::uint32_t intern(std::span<const std::uint32_t> k)
    {
        if (2 * (offsets_.size() - 1) >= slots_.size())
            grow();
        const std::uint64_t h = hash_words(k);
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = h & mask;; i = (i + 1) & mask) {
            const std::uint32_t id = slots_[i];
            if (id == empty) {
                const auto fresh = static_cast<std::uint32_t>(offsets_.size() - 1);
                pool_.insert(pool_.end(), k.begin(), k.end());
                offsets_.push_back(pool_.size());
                hashes_.push_back(h);
                slots_[i] = fresh;
                return fresh;
            }
            if (hashes_[id] == h && std::ranges::equal(key(id), k))
                return id;
        }
    }

    std::size_t size() const { return offsets_.size() - 1; }

    std::span<const std::uint32_t> key(std::uint32_t id) const
    {
        return {pool_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
    }

    // Ids ordered by lexicographic key order.
    std::vector<std::uint32_t> sorted_ids() const
    {
        std::vector<std::uint32_t> order(size());
        for (std::uint32_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return std::ranges::lexicographical_compare(key(a), key(b));
        });
        return order;
    }

private:
    static constexpr std::uint32_t empty = std::numeric_limits<std::uint32_t>::max();

    void grow()
    {
        std::vector<std::uint32_t> next(std::max<std::size_t>(64, 2 * slots_.size()), empty);
        const std::size_t mask = next.size() - 1;
        for (std::uint32_t id = 0; id < size(); ++id) {
            std::size_t i = hashes_[id] & mask;
            while (next[i] != empty)
                i = (i + 1) & mask;
            next[i] = id;
        }
        slots_ = std::move(next);
    }

    std::vector<std::uint32_t> pool_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint64_t> hashes_;
    std::vector<std::uint32_t> slots_;
};

} // namespace detail

/// All injective tuples of length 0..max_len over {0..universe-1}, stored as
/// a trie in breadth-first order. Tuple 0 is the empty tuple; the one-point
/// extensions of a tuple are contiguous and ordered by the appended element.
class tuple_space {
public:
    static constexpr std::size_t max_tuples = std::size_t{1} << 25;

    tuple_space(std::size_t universe, std::size_t max_len) : universe_(universe), max_len_(std::min(max_len, universe))
    {
        if (universe_ > 64)
            throw limit_exceeded("tuple_space: universes above 64 elements are not supported");
        parent_.push_back(0);
        last_.push_back(0);
        length_.push_back(0);
        mask_.push_back(0);
        level_begin_.push_back(0);
        level_begin_.push_back(1);
        for (std::size_t k = 1; k <= max_len_; ++k) {
            const std::size_t lo = level_begin_[k - 1], hi = level_begin_[k];
            for (std::size_t t = lo; t < hi; ++t) {
                first_child_.resize(t + 1, 0);
                first_child_[t] = static_cast<std::uint32_t>(parent_.size());
                for (std::size_t b = 0; b < universe_; ++b) {
                    if ((mask_[t] >> b) & 1u)
                        continue;
                    if (parent_.size() >= max_tuples)
                        throw limit_exceeded("tuple_space: too many injective tuples");
                    parent_.push_back(static_cast<std::uint32_t>(t));
                    last_.push_back(static_cast<std::uint8_t>(b));
                    length_.push_back(static_cast<std::uint8_t>(k));
                    mask_.push_back(mask_[t] | (std::uint64_t{1} << b));
                }
            }
            level_begin_.push_back(parent_.size());
        }
        first_child_.resize(parent_.size(), static_cast<std::uint32_t>(parent_.size()));
    }

    std::size_t universe() const { return universe_; }
    std::size_t max_len() const { return max_len_; }
    std::size_t count() const { return parent_.size(); }
    std::size_t length(std::size_t t) const { return length_[t]; }
    std::size_t parent(std::size_t t) const { return parent_[t]; }
    element last(std::size_t t) const { return last_[t]; }

    std::size_t level_begin(std::size_t k) const { return level_begin_[k]; }
    std::size_t level_end(std::size_t k) const { return level_begin_[k + 1]; }

    /// Number of one-point extensions stored for t (0 at the maximal length).
    std::size_t child_count(std::size_t t) const
    {
        return length_[t] < max_len_ ? universe_ - length_[t] : 0;
    }
    std::size_t first_child(std::size_t t) const { return first_child_[t]; }

    tuple elements(std::size_t t) const
    {
        tuple out(length_[t]);
        for (std::size_t i = out.size(); i-- > 0;) {
            out[i] = last_[t];
            t = parent_[t];
        }
        return out;
    }

    std::optional<std::size_t> find(std::span<const element> t) const
    {
        if (t.size() > max_len_)
            return std::nullopt;
        std::size_t id = 0;
        for (element e : t) {
            if (e >= universe_ || ((mask_[id] >> e) & 1u))
                return std::nullopt;
            const std::uint64_t below = mask_[id] & ((std::uint64_t{1} << e) - 1);
            id = first_child_[id] + (e - static_cast<std::size_t>(std::popcount(below)));
        }
        return id;
    }

private:
    std::size_t universe_;
    std::size_t max_len_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> first_child_;
    std::vector<std::uint8_t> last_;
    std::vector<std::uint8_t> length_;
    std::vector<std::uint64_t> mask_;
    std::vector<std::size_t> level_begin_;
};

/// An atomic formula R(x_{v_0}, ..., x_{v_{r-1}}) over positional variables.
struct atom {
    std::uint32_t symbol;
    std::vector<std::uint8_t> vars;
};

/// atoms_introduced(sig, k): the atoms over x_0..x_{k-1} that mention x_{k-1},
/// in a fixed order. The atomic diagram of a length-k tuple is the
/// concatenation of these lists for 1..k.
inline std::vector<atom> atoms_introduced(const signature& sig, std::size_t k)
{
    std::vector<atom> out;
    if (k == 0)
        return out;
    for (std::uint32_t s = 0; s < sig.size(); ++s) {
        const std::size_t r = sig[s].arity;
        std::vector<std::uint8_t> vars(r, 0);
        while (true) {
            if (std::find(vars.begin(), vars.end(), static_cast<std::uint8_t>(k - 1)) != vars.end())
                out.push_back({s, vars});
            std::size_t i = r;
            while (i > 0 && vars[i - 1] == k - 1)
                vars[--i] = 0;
            if (i == 0)
                break;
            ++vars[i - 1];
        }
    }
    return out;
}

/// Joint refinement of several structures over one signature.
///
/// Stage 0 assigns every injective tuple its quantifier-free type. Stage a+1
/// gives two tuples the same type iff they had the same stage-a type and the
/// same set of stage-a types among their one-point extensions. Type ids are
/// canonical: they are ranks of sorted type definitions, so they do not
/// depend on element labels or on the order of the input structures.
class refinement_trace {
public:
    std::size_t max_len() const { return max_len_; }
    std::size_t structure_count() const { return spaces_.size(); }
    const tuple_space& space(std::size_t s) const { return spaces_[s]; }

    /// Least a with stage a+1 equal to stage a as a partition.
    std::size_t fixpoint_stage() const { return fixpoint_; }

    /// Number of stored stages (fixpoint_stage() + 2).
    std::size_t stage_count() const { return types_.size(); }

    std::size_t class_count(std::size_t stage) const { return defs_[stage].size(); }

    type_id type_of(std::size_t stage, std::size_t s, std::size_t tuple_index) const
    {
        return types_[stage][s][tuple_index];
    }

    type_id type_of(std::size_t stage, std::size_t s, std::span<const element> t) const
    {
        auto id = spaces_[s].find(t);
        require(id.has_value(), "type_of: not an injective tuple within the trace's length bound");
        return types_[stage][s][*id];
    }

    /// Tuple length shared by all tuples of a type.
    std::size_t type_length(std::size_t stage, type_id t) const { return lengths_[stage][t]; }

    /// Stage 0: {parent type or npos, packed bits of atoms_introduced(length)}.
    /// Stage a>0: {stage a-1 type, sorted distinct stage a-1 extension types}.
    const std::vector<std::uint32_t>& definition(std::size_t stage, type_id t) const { return defs_[stage][t]; }

    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    friend refinement_trace joint_refine(std::span<const finite_structure> structures, std::size_t max_len);

private:
    using key = std::vector<std::uint32_t>;

    refinement_trace() = default;

    std::size_t max_len_ = 0;
    std::size_t fixpoint_ = 0;
    std::vector<tuple_space> spaces_;
    std::vector<std::vector<std::vector<type_id>>> types_; // [stage][structure][tuple]
    std::vector<std::vector<key>> defs_;                   // [stage][type]
    std::vector<std::vector<std::uint32_t>> lengths_;      // [stage][type]
};

inline refinement_trace joint_refine(std::span<const finite_structure> structures, std::size_t max_len)
{
    using key = std::vector<std::uint32_t>;
    require(!structures.empty(), "joint_refine: no structures");
    for (const auto& m : structures)
        require_same_signature(structures.front(), m);
    const signature& sig = structures.front().sig();

    refinement_trace tr;
    std::size_t longest = 0;
    for (const auto& m : structures)
        longest = std::max(longest, m.size());
    tr.max_len_ = std::min(max_len, longest);
    for (const auto& m : structures)
        tr.spaces_.emplace_back(m.size(), tr.max_len_);

    std::vector<std::vector<atom>> schema(tr.max_len_ + 1);
    for (std::size_t k = 1; k <= tr.max_len_; ++k)
        schema[k] = atoms_introduced(sig, k);

    const std::size_t n_struct = structures.size();

    // Stage 0, one length at a time so parents already carry canonical ids.
    // With only unary and binary symbols, the atoms that mention the last
    // variable are determined by per-element and per-pair codes, so tuples
    // are grouped by codes and the atom bits are computed once per group.
    bool compact = sig.size() <= 16;
    for (std::size_t i = 0; i < sig.size(); ++i)
        compact = compact && sig[i].arity <= 2;
    std::vector<std::vector<std::uint32_t>> self_code(n_struct), pair_code(n_struct);
    if (compact) {
        for (std::size_t s = 0; s < n_struct; ++s) {
            const auto& m = structures[s];
            const std::size_t n = m.size();
            self_code[s].assign(n, 0);
            pair_code[s].assign(n * n, 0);
            for (std::uint32_t sym = 0; sym < sig.size(); ++sym)
                for (const auto& t : m.relation(sym)) {
                    if (t.size() == 1 || t[0] == t[1])
                        self_code[s][t[0]] |= std::uint32_t{1} << sym;
                    else {
                        pair_code[s][t[0] * n + t[1]] |= std::uint32_t{1} << (2 * sym);
                        pair_code[s][t[1] * n + t[0]] |= std::uint32_t{1} << (2 * sym + 1);
                    }
                }
        }
    }
    auto atom_bits = [&](const finite_structure& m, const std::vector<element>& elems, std::size_t k, key& out) {
        const auto& atoms = schema[k];
        out.resize(1 + (atoms.size() + 31) / 32, 0);
        std::vector<element> args;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (m.relation(atoms[a].symbol).empty())
                continue;
            args.resize(atoms[a].vars.size());
            for (std::size_t i = 0; i < args.size(); ++i)
                args[i] = elems[atoms[a].vars[i]];
            if (m.holds(atoms[a].symbol, args))
                out[1 + a / 32] |= std::uint32_t{1} << (a % 32);
        }
    };

    std::vector<std::vector<type_id>> stage0(n_struct);
    for (std::size_t s = 0; s < n_struct; ++s)
        stage0[s].assign(tr.spaces_[s].count(), 0);
    std::vector<key> defs0;
    std::vector<std::uint32_t> len0;
    for (std::size_t k = 0; k <= tr.max_len_; ++k) {
        detail::key_interner local;
        std::vector<key> defs; // by local id
        std::vector<std::vector<std::uint32_t>> tmp(n_struct);
        std::vector<element> elems(k);
        key kk;
        for (std::size_t s = 0; s < n_struct; ++s) {
            const auto& sp = tr.spaces_[s];
            if (k > sp.max_len())
                continue;
            const auto& m = structures[s];
            const std::size_t n = m.size();
            for (std::size_t t = sp.level_begin(k); t < sp.level_end(k); ++t) {
                kk.clear();
                if (k == 0) {
                    kk.push_back(refinement_trace::npos);
                } else {
                    kk.push_back(stage0[s][sp.parent(t)]);
                    for (std::size_t i = k, u = t; i-- > 0; u = sp.parent(u))
                        elems[i] = sp.last(u);
                    if (compact) {
                        const element last = elems[k - 1];
                        kk.push_back(self_code[s][last]);
                        for (std::size_t i = 0; i + 1 < k; ++i)
                            kk.push_back(pair_code[s][elems[i] * n + last]);
                    } else {
                        atom_bits(m, elems, k, kk);
                    }
                }
                const auto id = local.intern(kk);
                if (id == defs.size()) {
                    if (compact && k > 0) {
                        key bits{kk[0]};
                        atom_bits(m, elems, k, bits);
                        defs.push_back(std::move(bits));
                    } else {
                        defs.push_back(kk);
                    }
                }
                tmp[s].push_back(id);
            }
        }
        std::vector<std::uint32_t> order(defs.size());
        for (std::uint32_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return defs[a] < defs[b]; });
        std::vector<std::uint32_t> rank(order.size());
        const auto base = static_cast<std::uint32_t>(defs0.size());
        for (std::uint32_t r = 0; r < order.size(); ++r) {
            rank[order[r]] = base + r;
            defs0.push_back(std::move(defs[order[r]]));
            len0.push_back(static_cast<std::uint32_t>(k));
        }
        for (std::size_t s = 0; s < n_struct; ++s) {
            const auto& sp = tr.spaces_[s];
            if (k > sp.max_len())
                continue;
            for (std::size_t i = 0; i < tmp[s].size(); ++i)
                stage0[s][sp.level_begin(k) + i] = rank[tmp[s][i]];
        }
    }
    tr.types_.push_back(std::move(stage0));
    tr.defs_.push_back(std::move(defs0));
    tr.lengths_.push_back(std::move(len0));

    while (true) {
        const auto& prev = tr.types_.back();
        const auto& prev_len = tr.lengths_.back();
        detail::key_interner local;
        std::vector<std::vector<std::uint32_t>> tmp(n_struct);
        for (std::size_t s = 0; s < n_struct; ++s) {
            const auto& sp = tr.spaces_[s];
            tmp[s].resize(sp.count());
            key kk;
            for (std::size_t t = 0; t < sp.count(); ++t) {
                kk.clear();
                kk.push_back(prev[s][t]);
                const std::size_t c0 = sp.first_child(t), cn = sp.child_count(t);
                for (std::size_t c = c0; c < c0 + cn; ++c)
                    kk.push_back(prev[s][c]);
                std::sort(kk.begin() + 1, kk.end());
                kk.erase(std::unique(kk.begin() + 1, kk.end()), kk.end());
                tmp[s][t] = local.intern(kk);
            }
        }
        const auto order = local.sorted_ids();
        std::vector<std::uint32_t> rank(order.size());
        std::vector<key> defs(order.size());
        std::vector<std::uint32_t> lens(order.size());
        for (std::uint32_t r = 0; r < order.size(); ++r) {
            rank[order[r]] = r;
            const auto kv = local.key(order[r]);
            defs[r].assign(kv.begin(), kv.end());
            lens[r] = prev_len[defs[r][0]];
        }
        std::vector<std::vector<type_id>> next(n_struct);
        for (std::size_t s = 0; s < n_struct; ++s) {
            next[s].resize(tmp[s].size());
            for (std::size_t t = 0; t < tmp[s].size(); ++t)
                next[s][t] = rank[tmp[s][t]];
        }
        const bool stable = defs.size() == tr.defs_.back().size();
        tr.types_.push_back(std::move(next));
        tr.defs_.push_back(std::move(defs));
        tr.lengths_.push_back(std::move(lens));
        if (stable) {
            tr.fixpoint_ = tr.types_.size() - 2;
            break;
        }
    }
    return tr;
}

inline refinement_trace joint_refine(const std::vector<finite_structure>& structures, std::size_t max_len)
{
    return joint_refine(std::span<const finite_structure>(structures), max_len);
}

} // namespace scott::core
