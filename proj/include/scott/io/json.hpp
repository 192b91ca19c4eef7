#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "scott/combinators/invariant.hpp"
#include "scott/core/sentence.hpp"
#include "scott/core/structure.hpp"
#include "scott/errors.hpp"
#include "scott/ext_nat.hpp"
#include "scott/grpact/coloring.hpp"
#include "scott/grpact/graph_coding.hpp"
#include "scott/orbit/orbit.hpp"
#include "scott/ref/data.hpp"
#include "scott/ref/encoders.hpp"
#include "scott/ref/presentation.hpp"

namespace scott::io {

using json = nlohmann::json;

/// j.get<T>() with every decoding failure reported as input_error.
template <class T>
T read(const json& j)
{
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw input_error(std::string("json: ") + e.what());
    }
}

inline json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("json: ") + e.what());
    }
}

inline json load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

} // namespace scott::io

namespace scott::io::detail {

inline std::pair<ref::variant, std::size_t> read_variant(const nlohmann::json& v)
{
    if (v.is_string()) {
        require(v.get<std::string>() == "bin", "json: variant must be \"bin\" or {\"inf\": w}");
        return {ref::variant::bin, 2};
    }
    require(v.is_object() && v.contains("inf"), "json: variant must be \"bin\" or {\"inf\": w}");
    return {ref::variant::inf, v.at("inf").get<std::size_t>()};
}

inline nlohmann::json write_variant(ref::variant kind, std::size_t width)
{
    if (kind == ref::variant::bin)
        return "bin";
    return {{"inf", width}};
}

} // namespace scott::io::detail

namespace nlohmann {

template <>
struct adl_serializer<scott::ext_nat> {
    static scott::ext_nat from_json(const json& j)
    {
        if (j.is_string()) {
            scott::require(j.get<std::string>() == "omega", "json: expected an integer or \"omega\"");
            return scott::ext_nat::omega();
        }
        scott::require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
                       "json: expected a nonnegative integer or \"omega\"");
        return scott::ext_nat(j.get<std::uint64_t>());
    }
    static void to_json(json& j, const scott::ext_nat& v)
    {
        if (v.is_omega())
            j = "omega";
        else
            j = v.value();
    }
};

template <>
struct adl_serializer<scott::core::finite_structure> {
    static scott::core::finite_structure from_json(const json& j)
    {
        std::vector<scott::core::symbol> syms;
        for (const auto& s : j.at("sig"))
            syms.push_back({s.at("name").get<std::string>(), s.at("arity").get<std::size_t>()});
        scott::core::signature sig(std::move(syms));
        const auto size = j.at("size").get<std::size_t>();
        std::vector<std::set<scott::core::tuple>> rel(sig.size());
        if (j.contains("interp")) {
            for (const auto& [name, tuples] : j.at("interp").items()) {
                const auto idx = sig.index_of(name);
                scott::require(idx.has_value(), "json: interpretation of unknown symbol '" + name + "'");
                for (const auto& t : tuples)
                    rel[*idx].insert(t.get<scott::core::tuple>());
            }
        }
        return scott::core::finite_structure(std::move(sig), size, std::move(rel));
    }
    static void to_json(json& j, const scott::core::finite_structure& m)
    {
        j = json::object();
        j["sig"] = json::array();
        j["interp"] = json::object();
        for (std::size_t s = 0; s < m.sig().size(); ++s) {
            j["sig"].push_back({{"name", m.sig()[s].name}, {"arity", m.sig()[s].arity}});
            auto& rows = j["interp"][m.sig()[s].name] = json::array();
            for (const auto& t : m.relation(s))
                rows.push_back(t);
        }
        j["size"] = m.size();
    }
};

template <>
struct adl_serializer<scott::ref::presentation> {
    static scott::ref::presentation from_json(const json& j)
    {
        const auto [kind, width] = scott::io::detail::read_variant(j.at("variant"));
        const auto depth = j.at("depth").get<std::size_t>();
        scott::require(width >= 2 && width <= 10, "json: width must be in 2..10");
        scott::require(depth >= 1, "json: depth must be >= 1");
        const auto n = scott::ref::presentation::leaf_count(width, depth);
        const auto& colors = j.at("colors");
        scott::require(colors.size() == n, "json: one color per address required");
        std::vector<scott::ext_nat> out(n);
        // The shape is known before the colors, so addresses index directly.
        scott::ref::presentation probe(kind, width, depth, std::vector<scott::ext_nat>(n, scott::ext_nat(1)));
        for (const auto& [address, c] : colors.items())
            out[probe.index_of(address)] = c.get<scott::ext_nat>();
        return scott::ref::presentation(kind, width, depth, std::move(out));
    }
    static void to_json(json& j, const scott::ref::presentation& p)
    {
        j = json::object();
        j["variant"] = scott::io::detail::write_variant(p.kind(), p.width());
        j["depth"] = p.depth();
        j["colors"] = json::object();
        for (std::size_t i = 0; i < p.size(); ++i)
            j["colors"][p.address(i)] = p.color(i);
    }
};

template <>
struct adl_serializer<scott::ref::labeled_tree> {
    static scott::ref::labeled_tree from_json(const json& j)
    {
        return scott::ref::labeled_tree(j.at("nodes").get<std::set<std::string>>());
    }
    static void to_json(json& j, const scott::ref::labeled_tree& t) { j = {{"nodes", t.nodes()}}; }
};

template <>
struct adl_serializer<scott::ref::ref_data> {
    static scott::ref::ref_data from_json(const json& j)
    {
        const auto [kind, width] = scott::io::detail::read_variant(j.at("variant"));
        std::vector<std::vector<scott::ref::ref_data::children>> levels;
        for (const auto& level : j.at("levels")) {
            std::vector<scott::ref::ref_data::children> nodes;
            for (const auto& node : level) {
                scott::ref::ref_data::children kids;
                for (const auto& e : node)
                    kids.emplace_back(e.at(0).get<scott::ref::ref_data::node_id>(), e.at(1).get<std::uint64_t>());
                nodes.push_back(std::move(kids));
            }
            levels.push_back(std::move(nodes));
        }
        return scott::ref::ref_data(kind, width, j.at("depth").get<std::size_t>(), std::move(levels),
                                    j.at("leaves").get<std::vector<scott::ext_nat>>());
    }
    static void to_json(json& j, const scott::ref::ref_data& d)
    {
        j = json::object();
        j["variant"] = scott::io::detail::write_variant(d.kind(), d.width());
        j["depth"] = d.depth();
        j["levels"] = json::array();
        for (std::size_t k = 0; k < d.depth(); ++k) {
            json level = json::array();
            for (const auto& node : d.level(k)) {
                json kids = json::array();
                for (const auto& [c, m] : node)
                    kids.push_back({c, m});
                level.push_back(std::move(kids));
            }
            j["levels"].push_back(std::move(level));
        }
        j["leaves"] = d.leaves();
    }
};

template <>
struct adl_serializer<scott::grpact::coloring> {
    static scott::grpact::coloring from_json(const json& j)
    {
        return scott::grpact::coloring(j.at("values").get<std::map<std::string, std::uint64_t>>());
    }
    static void to_json(json& j, const scott::grpact::coloring& c) { j = {{"values", c.values()}}; }
};

template <>
struct adl_serializer<scott::grpact::graph_instance> {
    static scott::grpact::graph_instance from_json(const json& j)
    {
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : j.at("edges")) {
            scott::require(e.size() == 2, "json: an edge is a pair of vertices");
            edges.insert({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
        }
        return scott::grpact::graph_instance(j.at("v").get<std::size_t>(), std::move(edges));
    }
    static void to_json(json& j, const scott::grpact::graph_instance& g)
    {
        j = {{"v", g.vertices()}, {"edges", json::array()}};
        for (auto [a, b] : g.edges())
            j["edges"].push_back({a, b});
    }
};

template <>
struct adl_serializer<scott::grpact::group_elem> {
    static scott::grpact::group_elem from_json(const json& j)
    {
        if (j.contains("xor")) {
            const auto bits = j.at("xor").get<std::string>();
            scott::grpact::require_binary(bits, "xor element");
            return scott::grpact::xor_elem{bits};
        }
        if (j.contains("partial"))
            return scott::grpact::partial_elem(j.at("partial").get<std::map<std::string, std::string>>());
        if (j.contains("total")) {
            const auto& t = j.at("total");
            const auto swaps = t.at("swaps").get<std::string>();
            scott::grpact::require_binary(swaps, "total element");
            std::vector<bool> bits;
            for (char ch : swaps)
                bits.push_back(ch == '1');
            return scott::grpact::total_elem(t.at("depth").get<std::size_t>(), std::move(bits));
        }
        throw scott::input_error("json: group element must have a \"xor\", \"partial\" or \"total\" key");
    }
    static void to_json(json& j, const scott::grpact::group_elem& g)
    {
        std::visit(
            [&](const auto& e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, scott::grpact::xor_elem>) {
                    j = {{"xor", e.bits}};
                } else if constexpr (std::is_same_v<E, scott::grpact::partial_elem>) {
                    j = {{"partial", e.map()}};
                } else {
                    std::string swaps;
                    for (bool b : e.swaps())
                        swaps.push_back(b ? '1' : '0');
                    j = {{"total", {{"depth", e.depth()}, {"swaps", swaps}}}};
                }
            },
            g);
    }
};

template <>
struct adl_serializer<scott::orbit::finite_action> {
    static scott::orbit::finite_action from_json(const json& j)
    {
        return scott::orbit::finite_action(j.at("n").get<std::size_t>(),
                                           j.at("perms").get<std::vector<std::vector<scott::orbit::point>>>());
    }
    static void to_json(json& j, const scott::orbit::finite_action& a)
    {
        j = {{"n", a.set_size()}, {"perms", json::array()}};
        for (std::size_t g = 0; g < a.group_size(); ++g)
            j["perms"].push_back(a.perm(g));
    }
};

template <>
struct adl_serializer<scott::orbit::orbit_structure> {
    static scott::orbit::orbit_structure from_json(const json& j)
    {
        scott::orbit::orbit_structure m;
        m.base = j.at("base").get<std::vector<scott::orbit::point>>();
        std::sort(m.base.begin(), m.base.end());
        for (const auto& e : j.at("orbits")) {
            scott::require(e.size() == 2, "json: an orbit entry is [tuple, representative]");
            scott::require(m.orbits.emplace(e.at(0).get<scott::orbit::ptuple>(), e.at(1).get<scott::orbit::ptuple>()).second,
                           "json: repeated tuple in orbit data");
        }
        return m;
    }
    static void to_json(json& j, const scott::orbit::orbit_structure& m)
    {
        j = {{"base", m.base}, {"orbits", json::array()}};
        for (const auto& [t, r] : m.orbits)
            j["orbits"].push_back({t, r});
    }
};

template <>
struct adl_serializer<scott::comb::nested_invariant> {
    static scott::comb::nested_invariant from_json(const json& j)
    {
        scott::require(j.is_object() && j.size() == 1, "json: invariant must have exactly one of base/jump/prod");
        if (j.contains("base"))
            return scott::comb::nested_invariant::base(j.at("base").get<scott::ext_nat>());
        if (j.contains("jump")) {
            std::vector<std::pair<scott::comb::nested_invariant, scott::ext_nat>> entries;
            for (const auto& e : j.at("jump")) {
                scott::require(e.size() == 2, "json: a jump entry is [invariant, multiplicity]");
                entries.emplace_back(e.at(0).get<scott::comb::nested_invariant>(), e.at(1).get<scott::ext_nat>());
            }
            return scott::comb::nested_invariant::jump(std::move(entries));
        }
        if (j.contains("prod")) {
            std::vector<scott::comb::nested_invariant> parts;
            for (const auto& e : j.at("prod"))
                parts.push_back(e.get<scott::comb::nested_invariant>());
            return scott::comb::nested_invariant::prod(std::move(parts));
        }
        throw scott::input_error("json: invariant must have exactly one of base/jump/prod");
    }
    static void to_json(json& j, const scott::comb::nested_invariant& inv)
    {
        switch (inv.kind()) {
        case scott::comb::inv_kind::base:
            j = {{"base", inv.value()}};
            return;
        case scott::comb::inv_kind::jump: {
            json entries = json::array();
            for (std::size_t i = 0; i < inv.children().size(); ++i)
                entries.push_back({inv.children()[i], inv.mults()[i]});
            j = {{"jump", std::move(entries)}};
            return;
        }
        case scott::comb::inv_kind::prod:
            j = {{"prod", inv.children()}};
            return;
        }
    }
};

} // namespace nlohmann
