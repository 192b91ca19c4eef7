#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scott/combinators/invariant.hpp"
#include "scott/core/structure.hpp"

namespace scott::comb {

inline constexpr std::size_t max_assembly_size = 64;

namespace detail {

inline std::string sort_name(const std::string& path)
{
    return "U" + path;
}

inline std::string equivalence_name(const std::string& path, std::size_t level)
{
    return "E" + path + "/" + std::to_string(level);
}

inline void collect_shape(const nested_invariant& inv, const std::string& path, std::size_t jumps,
                          std::set<std::string>& equivalences, std::set<std::string>& sorts)
{
    switch (inv.kind()) {
    case inv_kind::base:
        return;
    case inv_kind::jump:
        equivalences.insert(equivalence_name(path, jumps + 1));
        for (const auto& c : inv.children())
            collect_shape(c, path, jumps + 1, equivalences, sorts);
        return;
    case inv_kind::prod:
        for (std::size_t i = 0; i < inv.children().size(); ++i) {
            const auto sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
            sorts.insert(sort_name(sub));
            collect_shape(inv.children()[i], sub, 0, equivalences, sorts);
        }
        return;
    }
}

} // namespace detail

/// Signature able to hold the assemblies of all the given invariants:
/// successor S, a unary sort predicate U<path> for every PROD component
/// position, and an equivalence E<path>/<k> for the k-th JUMP nested inside
/// that sort.
inline core::signature assembly_signature(const std::vector<nested_invariant>& invs)
{
    std::set<std::string> equivalences, sorts;
    for (const auto& inv : invs)
        detail::collect_shape(inv, "", 0, equivalences, sorts);
    std::vector<core::symbol> syms{{"S", 2}};
    for (const auto& e : equivalences)
        syms.push_back({e, 2});
    for (const auto& s : sorts)
        syms.push_back({s, 1});
    return core::signature(std::move(syms));
}

/// Finite model with invariant inv: BASE(n) is n directed cycles of length
/// cycle_len, a JUMP places each entry's model mult times as classes of the
/// next equivalence relation, a PROD places its components in disjoint sorts.
/// Relations between different blocks or sorts are empty.
inline core::finite_structure assemble(const nested_invariant& inv, std::size_t cycle_len, const core::signature& sig)
{
    require(cycle_len >= 3, "assemble: cycle length must be >= 3");
    require(!inv.has_omega(), "assemble: OMEGA cannot be materialized finitely");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < sig.size(); ++i)
        index[sig[i].name] = i;
    std::vector<std::set<core::tuple>> rel(sig.size());
    std::size_t size = 0;
    auto symbol_index = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end())
            throw signature_mismatch("assemble: signature lacks symbol " + name);
        return it->second;
    };

    std::function<std::vector<core::element>(const nested_invariant&, const std::string&, std::size_t)> emit =
        [&](const nested_invariant& v, const std::string& path, std::size_t jumps) {
            std::vector<core::element> out;
            switch (v.kind()) {
            case inv_kind::base: {
                const auto s = symbol_index("S");
                for (std::uint64_t c = 0; c < v.value().value(); ++c) {
                    if (size + cycle_len > max_assembly_size)
                        throw limit_exceeded("assemble: more than 64 elements");
                    const auto first = static_cast<core::element>(size);
                    for (std::size_t i = 0; i < cycle_len; ++i) {
                        const auto x = static_cast<core::element>(size + i);
                        rel[s].insert({x, static_cast<core::element>(first + (i + 1) % cycle_len)});
                        out.push_back(x);
                    }
                    size += cycle_len;
                }
                break;
            }
            case inv_kind::jump: {
                const auto e = symbol_index(detail::equivalence_name(path, jumps + 1));
                for (std::size_t i = 0; i < v.children().size(); ++i)
                    for (std::uint64_t m = 0; m < v.mults()[i].value(); ++m) {
                        const auto block = emit(v.children()[i], path, jumps + 1);
                        for (auto x : block)
                            for (auto y : block)
                                rel[e].insert({x, y});
                        out.insert(out.end(), block.begin(), block.end());
                    }
                break;
            }
            case inv_kind::prod:
                for (std::size_t i = 0; i < v.children().size(); ++i) {
                    const auto sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
                    const auto u = symbol_index(detail::sort_name(sub));
                    const auto part = emit(v.children()[i], sub, 0);
                    for (auto x : part)
                        rel[u].insert({x});
                    out.insert(out.end(), part.begin(), part.end());
                }
                break;
            }
            return out;
        };
    emit(inv, "", 0);
    return core::finite_structure(sig, size, std::move(rel));
}

inline core::finite_structure assemble(const nested_invariant& inv, std::size_t cycle_len)
{
    return assemble(inv, cycle_len, assembly_signature({inv}));
}

} // namespace scott::comb
