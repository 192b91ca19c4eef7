#pragma once

#include <set>
#include <string>
#include <vector>

#include "scott/core/structure.hpp"
#include "scott/ref/presentation.hpp"

namespace scott::ref {

/// The finite REF model of a presentation with finite colors: elements are
/// pairs (address, i < color) and E_k relates elements whose addresses agree
/// on the first k symbols, for k = 0..d.
inline core::finite_structure materialize(const presentation& p)
{
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < p.size(); ++i) {
        require(p.color(i).is_finite(), "materialize: OMEGA colors have no finite model");
        for (std::uint64_t j = 0; j < p.color(i).value(); ++j) {
            owner.push_back(i);
            if (owner.size() > 64)
                throw limit_exceeded("materialize: more than 64 elements");
        }
    }
    std::vector<core::symbol> syms;
    for (std::size_t k = 0; k <= p.depth(); ++k)
        syms.push_back({"E" + std::to_string(k), 2});
    std::vector<std::set<core::tuple>> rel(syms.size());
    for (core::element x = 0; x < owner.size(); ++x)
        for (core::element y = 0; y < owner.size(); ++y) {
            const std::string a = p.address(owner[x]), b = p.address(owner[y]);
            std::size_t common = 0;
            while (common < a.size() && a[common] == b[common])
                ++common;
            for (std::size_t k = 0; k <= common; ++k)
                rel[k].insert({x, y});
        }
    return core::finite_structure(core::signature(std::move(syms)), owner.size(), std::move(rel));
}

} // namespace scott::ref
