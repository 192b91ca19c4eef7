#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scott/errors.hpp"

namespace scott::core {

using element = std::uint32_t;
using tuple = std::vector<element>;

struct symbol {
    std::string name;
    std::size_t arity = 1;

    bool operator==(const symbol&) const = default;
};

/// An ordered list of relation symbols. The order is canonical: it fixes the
/// serialization order of atomic formulas.
class signature {
public:
    signature() = default;

    explicit signature(std::vector<symbol> symbols) : symbols_(std::move(symbols))
    {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            require(!symbols_[i].name.empty(), "signature: empty symbol name");
            require(symbols_[i].arity >= 1, "signature: arity of '" + symbols_[i].name + "' must be >= 1");
            for (std::size_t j = 0; j < i; ++j)
                require(symbols_[j].name != symbols_[i].name,
                        "signature: duplicate symbol '" + symbols_[i].name + "'");
        }
    }

    const std::vector<symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    const symbol& operator[](std::size_t i) const { return symbols_[i]; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == name)
                return i;
        return std::nullopt;
    }

    bool operator==(const signature&) const = default;

private:
    std::vector<symbol> symbols_;
};

/// A finite relational structure with universe {0, ..., size-1}.
///
/// Relations are kept both as sorted tuple sets (the canonical content) and,
/// when small enough, as dense bit tables for O(1) atom queries during
/// refinement and search.
class finite_structure {
public:
    finite_structure(signature sig, std::size_t size, std::vector<std::set<tuple>> interp)
        : sig_(std::move(sig)), size_(size), interp_(std::move(interp))
    {
        require(size_ >= 1, "structure: universe must be nonempty");
        require(interp_.size() == sig_.size(), "structure: one relation per symbol required");
        for (std::size_t s = 0; s < sig_.size(); ++s) {
            for (const auto& t : interp_[s]) {
                require(t.size() == sig_[s].arity,
                        "structure: tuple of wrong arity in '" + sig_[s].name + "'");
                for (element e : t)
                    require(e < size_, "structure: tuple entry out of range in '" + sig_[s].name + "'");
            }
        }
        build_tables();
    }

    /// The structure with no tuples in any relation.
    static finite_structure empty(signature sig, std::size_t size)
    {
        std::vector<std::set<tuple>> interp(sig.size());
        return finite_structure(std::move(sig), size, std::move(interp));
    }

    const signature& sig() const { return sig_; }
    std::size_t size() const { return size_; }
    const std::set<tuple>& relation(std::size_t sym) const { return interp_[sym]; }
    const std::vector<std::set<tuple>>& relations() const { return interp_; }

    bool holds(std::size_t sym, std::span<const element> args) const
    {
        const auto& table = tables_[sym];
        if (!table.empty()) {
            std::size_t idx = 0;
            for (element e : args)
                idx = idx * size_ + e;
            return table[idx];
        }
        return interp_[sym].count(tuple(args.begin(), args.end())) != 0;
    }

    /// The image structure under the relabeling i -> perm[i].
    finite_structure relabel(std::span<const element> perm) const
    {
        require(perm.size() == size_, "relabel: permutation has wrong length");
        std::vector<bool> seen(size_, false);
        for (element p : perm) {
            require(p < size_ && !seen[p], "relabel: not a permutation");
            seen[p] = true;
        }
        std::vector<std::set<tuple>> out(interp_.size());
        for (std::size_t s = 0; s < interp_.size(); ++s)
            for (const auto& t : interp_[s]) {
                tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    img[i] = perm[t[i]];
                out[s].insert(std::move(img));
            }
        return finite_structure(sig_, size_, std::move(out));
    }

    bool operator==(const finite_structure& o) const
    {
        return sig_ == o.sig_ && size_ == o.size_ && interp_ == o.interp_;
    }

private:
    static constexpr std::size_t dense_limit = std::size_t{1} << 24;

    void build_tables()
    {
        tables_.assign(sig_.size(), {});
        for (std::size_t s = 0; s < sig_.size(); ++s) {
            std::size_t cells = 1;
            bool fits = true;
            for (std::size_t i = 0; i < sig_[s].arity && fits; ++i) {
                if (cells > dense_limit / size_)
                    fits = false;
                else
                    cells *= size_;
            }
            if (!fits)
                continue;
            tables_[s].assign(cells, false);
            for (const auto& t : interp_[s]) {
                std::size_t idx = 0;
                for (element e : t)
                    idx = idx * size_ + e;
                tables_[s][idx] = true;
            }
        }
    }

    signature sig_;
    std::size_t size_;
    std::vector<std::set<tuple>> interp_;
    std::vector<std::vector<bool>> tables_;
};

inline void require_same_signature(const finite_structure& m, const finite_structure& n)
{
    if (!(m.sig() == n.sig()))
        throw signature_mismatch("structures are over different signatures");
}

/// A relation-preserving bijection witness: element i of the source maps to
/// mapping[i] of the target.
struct bijection {
    std::vector<element> mapping;

    bool operator==(const bijection&) const = default;

    /// True iff this is a bijection between the universes of m and n that
    /// carries every relation of m exactly onto the corresponding relation of n.
    bool verifies(const finite_structure& m, const finite_structure& n) const
    {
        if (!(m.sig() == n.sig()) || m.size() != n.size() || mapping.size() != m.size())
            return false;
        std::vector<bool> hit(n.size(), false);
        for (element e : mapping) {
            if (e >= n.size() || hit[e])
                return false;
            hit[e] = true;
        }
        for (std::size_t s = 0; s < m.sig().size(); ++s) {
            if (m.relation(s).size() != n.relation(s).size())
                return false;
            tuple img;
            for (const auto& t : m.relation(s)) {
                img.resize(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    img[i] = mapping[t[i]];
                if (!n.holds(s, img))
                    return false;
            }
        }
        return true;
    }
};

} // namespace scott::core
