#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scott/combinators/assemble.hpp"
#include "scott/combinators/enumerate.hpp"
#include "scott/core/ef_game.hpp"
#include "scott/core/oracle.hpp"
#include "scott/core/sentence.hpp"
#include "scott/grpact/graph_coding.hpp"
#include "scott/grpact/rigidity.hpp"
#include "scott/io/json.hpp"
#include "scott/orbit/catalog.hpp"
#include "scott/ref/data.hpp"
#include "scott/ref/encoders.hpp"
#include "scott/verify/generators.hpp"

namespace scott::verify {

using io::json;
using outcome = std::optional<std::string>;

struct options {
    std::uint64_t seed = 0;
    std::uint64_t budget = 100;
    std::size_t oracle_bound = core::default_oracle_bound;
};

struct failure {
    std::string label;
    json input;
    std::string message;
    std::string repro;
};

struct report {
    std::string suite;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t cases = 0;
    std::uint64_t failure_count = 0;
    std::vector<failure> failures;
    json observations = json::object();
    std::int64_t wall_time_ms = 0;
    std::vector<report> parts;

    bool passed() const { return failure_count == 0; }
};

inline constexpr std::size_t max_recorded_failures = 20;
inline constexpr std::size_t witness_samples = 128;

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"core-oracle",  "ref-inject",    "ref-tree",
                                                "ref-roundtrip", "grp-rigidity", "grp-reduction",
                                                "grp-k-coding", "orbit-main",    "comb-growth"};
    return names;
}

/// Per-suite stream seed: the campaign seed xor the FNV-1a hash of the suite
/// name, so a suite sees the same inputs alone and inside `all`.
inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : suite) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return seed ^ h;
}

// ---------------------------------------------------------------------------
// Typed checks. Each returns nullopt on success or a failure message.

namespace check {

inline outcome iso_agreement(const core::finite_structure& m, const core::finite_structure& n, bool css,
                             std::size_t bound)
{
    const auto w = core::brute_force_iso(m, n, bound);
    if (w && !w->verifies(m, n))
        return "brute-force witness does not verify";
    const std::size_t rounds = std::max(m.size(), n.size());
    const bool ef = core::ef_equiv(m, n, rounds);
    if (css == w.has_value() && ef == css)
        return std::nullopt;
    return "css_equal=" + std::string(css ? "true" : "false") + " brute_force_iso=" +
           (w ? "present" : "absent") + " ef_equiv(" + std::to_string(rounds) + ")=" + (ef ? "true" : "false");
}

/// The 64 loopless digraphs on 3 points: isomorphism classes found by
/// pairwise brute force must number 16 and match the distinct sentences.
inline outcome digraph_count(std::size_t bound, json* observed = nullptr)
{
    const std::uint64_t cells[6] = {1, 2, 3, 5, 6, 7};
    std::vector<core::finite_structure> ms;
    std::set<std::vector<std::uint8_t>> sentences;
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
        std::uint64_t mask = 0;
        for (int c = 0; c < 6; ++c)
            if ((bits >> c) & 1u)
                mask |= std::uint64_t{1} << cells[c];
        ms.push_back(digraph(3, mask));
        sentences.insert(core::scott_sentence(ms.back()).bytes());
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        bool found = false;
        for (auto r : reps)
            found = found || core::brute_force_iso(ms[i], ms[r], bound).has_value();
        if (!found)
            reps.push_back(i);
    }
    if (observed)
        *observed = {{"labeled", ms.size()}, {"classes", reps.size()}, {"sentences", sentences.size()}};
    if (reps.size() != 16 || sentences.size() != 16)
        return "expected 16 classes and 16 sentences, got " + std::to_string(reps.size()) + " and " +
               std::to_string(sentences.size());
    return std::nullopt;
}

inline outcome ref_inject(const std::set<std::string>& i, const std::set<std::string>& j)
{
    const auto p = ref::encode_set_refbin(i, 3), q = ref::encode_set_refbin(j, 3);
    if (ref::decode_set_refbin(p) != i)
        return std::string("decode does not recover I");
    if (ref::decode_set_refbin(q) != j)
        return std::string("decode does not recover J");
    if (i != j && ref::presentations_equiv(p, q))
        return std::string("distinct sets encode to equivalent presentations");
    return std::nullopt;
}

inline outcome ref_tree(const std::set<std::string>& nodes)
{
    const ref::labeled_tree t(nodes);
    const auto back = ref::tree_invariant(ref::encode_tree_refinf(t, 4, 2));
    if (!back)
        return std::string("tree_invariant is absent");
    if (!(*back == t.canonical()))
        return std::string("tree_invariant differs from the canonical form");
    return std::nullopt;
}

inline outcome ref_roundtrip(const ref::presentation& p, std::uint64_t perm_seed)
{
    campaign_rng rng(perm_seed);
    const auto data = ref::compute_data(p);
    if (!(ref::compute_data(random_automorphic_image(p, rng)) == data))
        return std::string("compute_data changes under an automorphism");
    const auto back = ref::unpack_data(data);
    if (!(ref::compute_data(back) == data))
        return std::string("compute(unpack(D)) differs from D");
    if (!ref::presentations_equiv(back, p))
        return std::string("unpack(compute(p)) is not equivalent to p");
    if (!(ref::unpack_data(ref::compute_data(back)) == back))
        return std::string("unpack(compute(.)) is not a fixpoint");
    return std::nullopt;
}

inline json witness_json(const std::optional<grpact::rigidity_witness>& w)
{
    if (!w)
        return nullptr;
    return {{"a", w->a}, {"b", w->b}, {"c", w->c}};
}

inline outcome rigidity(bool is_xor, std::size_t d, std::size_t len, const json& expected, json* observed = nullptr)
{
    const auto kind = is_xor ? grpact::search_kind(grpact::xor_kind{d}) : grpact::search_kind(grpact::total_kind{d});
    const json got = witness_json(grpact::find_rigidity_counterexample(kind, len));
    if (observed)
        *observed = got;
    if (got != expected)
        return "expected " + expected.dump() + ", found " + got.dump();
    return std::nullopt;
}

inline outcome graph_roundtrip(const grpact::graph_instance& g)
{
    const auto back = grpact::decode_graph_tk(grpact::encode_graph_tk(g, 2, g.vertices() + 2).materialized);
    if (!grpact::graph_isomorphism(back, g))
        return std::string("decode(encode(G)) is not isomorphic to G");
    return std::nullopt;
}

namespace detail {

inline std::size_t padded_meet(std::string a, std::string b, std::size_t n)
{
    a.resize(n, '0');
    b.resize(n, '0');
    std::size_t k = 0;
    while (k < n && a[k] == b[k])
        ++k;
    return k;
}

} // namespace detail

/// sigma carries G onto G.relabel(sigma); the lazy witness must map the
/// materialized encoding of G onto the encoding of the image and behave as
/// a block-respecting, meet-preserving map on sampled branches.
inline outcome graph_witness(const grpact::graph_instance& g, const std::vector<std::size_t>& sigma,
                             std::uint64_t sample_seed)
{
    const auto h = g.relabel(sigma);
    const auto enc = grpact::encode_graph_tk(g, 2, g.vertices() + 2);
    auto f = grpact::lazy_claim_witness(sigma, enc.symbolic.scheme);
    if (!grpact::witness_maps_family(f, enc, grpact::symbolic_family{h, enc.symbolic.scheme}))
        return std::string("witness does not map the encoded family");
    campaign_rng rng(sample_seed);
    std::vector<std::string> samples;
    for (std::size_t i = 0; i < witness_samples; ++i)
        samples.push_back(random_bits(rng, 1 + rng.below(10)));
    const auto& scheme = enc.symbolic.scheme;
    for (const auto& s : samples)
        if (scheme.block_of(f.branch(s)) != sigma[scheme.block_of(s)])
            return "branch " + s + " lands in the wrong block";
    f.partial_on(samples);
    const auto answered = f.answered();
    for (const auto& [a, fa] : answered)
        for (const auto& [b, fb] : answered) {
            const std::size_t n = std::max({a.size(), b.size(), fa.size(), fb.size()}) + 1;
            if (detail::padded_meet(a, b, n) != detail::padded_meet(fa, fb, n))
                return "meet of " + a + " and " + b + " is not preserved";
        }
    return std::nullopt;
}

/// No TOTAL(3) element realizes the suffix-block 3-cycle on the empty graph
/// on 3 vertices, while the lazy witness does on the representatives.
inline outcome two_group_obstruction()
{
    const auto enc = grpact::encode_graph_tk(grpact::graph_instance(3, {}), 1, 3);
    if (grpact::total_realizes(enc.representatives, {1, 2, 0}, 3) ||
        grpact::total_realizes(enc.representatives, {2, 0, 1}, 3))
        return std::string("a TOTAL(3) element realizes a 3-cycle of blocks");
    if (!grpact::total_realizes(enc.representatives, {0, 1, 2}, 3))
        return std::string("the identity is not realized");
    auto f = grpact::lazy_claim_witness({1, 2, 0}, enc.symbolic.scheme);
    for (std::size_t i = 0; i < 3; ++i)
        for (const auto& r : enc.representatives[i])
            if (enc.symbolic.scheme.block_of(f.branch(r)) != (i + 1) % 3)
                return "lazy witness sends " + r + " to the wrong block";
    return std::nullopt;
}

inline outcome k_coding(const std::set<std::string>& x, const std::set<std::string>& y)
{
    const auto fx = grpact::encode_set_k(x, 3, 1), fy = grpact::encode_set_k(y, 3, 1);
    const auto g = grpact::equiv_families(fx, fy, grpact::xor_kind{3});
    if (g) {
        const auto img = grpact::act(*g, fx);
        if (!img || grpact::sorted(*img) != grpact::sorted(fy))
            return std::string("returned element does not map X's family onto Y's");
    }
    if (g.has_value() != (x == y))
        return std::string(x == y ? "equal sets are not equivalent" : "distinct sets are equivalent");
    return std::nullopt;
}

inline outcome orbit_equiv(const orbit::finite_action& act, const std::vector<orbit::point>& a,
                           const std::vector<orbit::point>& b, std::size_t bound)
{
    const auto e = orbit::equiv_sets(act, a, b);
    if (e) {
        std::vector<orbit::point> img;
        for (auto x : a)
            img.push_back(act.apply(*e, x));
        std::sort(img.begin(), img.end());
        auto sb = b;
        std::sort(sb.begin(), sb.end());
        if (img != sb)
            return std::string("equiv_sets element does not map A onto B");
    }
    const auto ma = orbit::build_orbit_structure(act, a), mb = orbit::build_orbit_structure(act, b);
    const bool iso = orbit::orbit_structures_isomorphic(ma, mb);
    bool brute = a.empty() && b.empty();
    if (!a.empty() && !b.empty()) {
        const auto ms = orbit::materialize({&ma, &mb});
        brute = core::brute_force_iso(ms[0], ms[1], bound).has_value();
    }
    if (e.has_value() == iso && iso == brute)
        return std::nullopt;
    return "equiv_sets=" + std::string(e ? "present" : "absent") + " isomorphic=" + (iso ? "true" : "false") +
           " brute_force_iso=" + (brute ? "present" : "absent");
}

inline outcome orbit_lift(const orbit::finite_action& act, const std::vector<std::pair<orbit::point, orbit::point>>& pairs)
{
    std::map<orbit::point, orbit::point> f(pairs.begin(), pairs.end());
    std::vector<orbit::point> src;
    for (const auto& [x, y] : pairs)
        src.push_back(x);
    bool preserves = true;
    orbit::detail::for_each_injective(src, src.size(), [&](const orbit::ptuple& t) {
        orbit::ptuple u;
        for (auto x : t)
            u.push_back(f.at(x));
        preserves = preserves && orbit::orbit_canon(act, t) == orbit::orbit_canon(act, u);
    });
    const auto g = orbit::lift_bijection(act, pairs);
    if (g)
        for (const auto& [x, y] : pairs)
            if (act.apply(*g, x) != y)
                return std::string("lifted element does not extend the bijection");
    if (g.has_value() != preserves)
        return std::string(preserves ? "orbit-preserving bijection not lifted" : "non-preserving bijection lifted");
    return std::nullopt;
}

inline outcome count_agrees(std::size_t k, std::uint64_t base, std::uint64_t cap)
{
    const auto enumerated = comb::enumerate_level(k, base, cap).size();
    const auto counted = comb::count_level(k, base, cap);
    if (enumerated != counted)
        return "enumeration gives " + std::to_string(enumerated) + ", count_level gives " + std::to_string(counted);
    return std::nullopt;
}

inline outcome count_grows(std::size_t k, std::uint64_t base, std::uint64_t cap)
{
    std::uint64_t next = 0;
    try {
        next = comb::count_level(k + 1, base, cap);
    } catch (const limit_exceeded&) {
        return std::nullopt;
    }
    if (next <= comb::count_level(k, base, cap))
        return std::string("count_level does not grow at this level");
    return std::nullopt;
}

inline outcome assembly_faithful(const comb::nested_invariant& a, const comb::nested_invariant& b, bool css,
                                 const core::finite_structure& ma, const core::finite_structure& mb, std::size_t bound)
{
    const bool same = a == b;
    const bool iso = core::brute_force_iso(ma, mb, bound).has_value();
    if (css == same && iso == same)
        return std::nullopt;
    return "equal=" + std::string(same ? "true" : "false") + " css_equal=" + (css ? "true" : "false") +
           " brute_force_iso=" + (iso ? "present" : "absent");
}

} // namespace check

// ---------------------------------------------------------------------------
// JSON replay of single cases. Every case input carries a "check" field.

namespace detail {

template <class T>
T get(const json& in, const char* key)
{
    if (!in.contains(key))
        throw input_error(std::string("case input lacks field ") + key);
    return io::read<T>(in.at(key));
}

inline const std::map<std::string, std::function<outcome(const json&, const options&)>>& replayers()
{
    using core::finite_structure;
    static const std::map<std::string, std::function<outcome(const json&, const options&)>> table{
        {"iso-agreement",
         [](const json& in, const options& o) {
             const auto m = get<finite_structure>(in, "a"), n = get<finite_structure>(in, "b");
             return check::iso_agreement(m, n, core::css_equal(m, n), o.oracle_bound);
         }},
        {"digraph-count", [](const json&, const options& o) { return check::digraph_count(o.oracle_bound); }},
        {"ref-inject",
         [](const json& in, const options&) {
             return check::ref_inject(get<std::set<std::string>>(in, "I"), get<std::set<std::string>>(in, "J"));
         }},
        {"ref-tree",
         [](const json& in, const options&) { return check::ref_tree(get<std::set<std::string>>(in, "tree")); }},
        {"ref-roundtrip",
         [](const json& in, const options&) {
             return check::ref_roundtrip(get<ref::presentation>(in, "presentation"),
                                         get<std::uint64_t>(in, "perm_seed"));
         }},
        {"rigidity",
         [](const json& in, const options&) {
             const auto kind = get<std::string>(in, "kind");
             require(kind == "xor" || kind == "total", "rigidity case: kind must be xor or total");
             require(in.contains("expected"), "rigidity case lacks field expected");
             return check::rigidity(kind == "xor", get<std::size_t>(in, "depth"), get<std::size_t>(in, "tuple_len"),
                                    in.at("expected"));
         }},
        {"graph-roundtrip",
         [](const json& in, const options&) { return check::graph_roundtrip(get<grpact::graph_instance>(in, "graph")); }},
        {"graph-witness",
         [](const json& in, const options&) {
             return check::graph_witness(get<grpact::graph_instance>(in, "graph"),
                                         get<std::vector<std::size_t>>(in, "sigma"),
                                         get<std::uint64_t>(in, "sample_seed"));
         }},
        {"two-group-obstruction", [](const json&, const options&) { return check::two_group_obstruction(); }},
        {"k-coding",
         [](const json& in, const options&) {
             return check::k_coding(get<std::set<std::string>>(in, "X"), get<std::set<std::string>>(in, "Y"));
         }},
        {"orbit-equiv",
         [](const json& in, const options& o) {
             return check::orbit_equiv(get<orbit::finite_action>(in, "action"),
                                       get<std::vector<orbit::point>>(in, "A"),
                                       get<std::vector<orbit::point>>(in, "B"), o.oracle_bound);
         }},
        {"orbit-lift",
         [](const json& in, const options&) {
             return check::orbit_lift(get<orbit::finite_action>(in, "action"),
                                      get<std::vector<std::pair<orbit::point, orbit::point>>>(in, "pairs"));
         }},
        {"count-level",
         [](const json& in, const options&) {
             return check::count_agrees(get<std::size_t>(in, "level"), get<std::uint64_t>(in, "base"),
                                        get<std::uint64_t>(in, "cap"));
         }},
        {"count-growth",
         [](const json& in, const options&) {
             return check::count_grows(get<std::size_t>(in, "level"), get<std::uint64_t>(in, "base"),
                                       get<std::uint64_t>(in, "cap"));
         }},
        {"assembly",
         [](const json& in, const options& o) {
             const auto a = get<comb::nested_invariant>(in, "a"), b = get<comb::nested_invariant>(in, "b");
             const auto len = get<std::size_t>(in, "cycle_len");
             const auto sig = comb::assembly_signature({a, b});
             const auto ma = comb::assemble(a, len, sig), mb = comb::assemble(b, len, sig);
             return check::assembly_faithful(a, b, core::css_equal(ma, mb), ma, mb, o.oracle_bound);
         }},
    };
    return table;
}

} // namespace detail

/// Re-runs a single case from its JSON input. Exceptions propagate.
inline outcome replay_case(const json& in, const options& opt)
{
    if (!in.is_object() || !in.contains("check") || !in.at("check").is_string())
        throw input_error("case input must be an object with a string field \"check\"");
    const auto& table = detail::replayers();
    const auto it = table.find(in.at("check").get<std::string>());
    if (it == table.end())
        throw input_error("unknown check kind " + in.at("check").dump());
    return it->second(in, opt);
}

namespace detail {

// Inputs one step smaller than `in`: one tuple, set element, tree leaf,
// graph edge or nontrivial color removed.
inline std::vector<json> shrink_steps(const json& in)
{
    std::vector<json> out;
    const auto kind = in.at("check").get<std::string>();
    auto drop_each = [&](const json::json_pointer& ptr) {
        if (!in.contains(ptr) || !in.at(ptr).is_array())
            return;
        for (std::size_t i = 0; i < in.at(ptr).size(); ++i) {
            json c = in;
            c.at(ptr).erase(i);
            out.push_back(std::move(c));
        }
    };
    if (kind == "iso-agreement") {
        for (const char* side : {"a", "b"})
            if (in.at(side).contains("interp"))
                for (const auto& [name, tuples] : in.at(side).at("interp").items())
                    drop_each(json::json_pointer("/" + std::string(side) + "/interp/" + name));
    } else if (kind == "ref-inject") {
        drop_each(json::json_pointer("/I"));
        drop_each(json::json_pointer("/J"));
    } else if (kind == "k-coding") {
        drop_each(json::json_pointer("/X"));
        drop_each(json::json_pointer("/Y"));
    } else if (kind == "ref-tree") {
        const auto nodes = in.at("tree").get<std::vector<std::string>>();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            bool leaf = !nodes[i].empty();
            for (const auto& x : nodes)
                leaf = leaf && !(x.size() > nodes[i].size() && x.compare(0, nodes[i].size(), nodes[i]) == 0);
            if (leaf) {
                json c = in;
                c.at("tree").erase(i);
                out.push_back(std::move(c));
            }
        }
    } else if (kind == "ref-roundtrip") {
        for (const auto& [addr, color] : in.at("presentation").at("colors").items())
            if (color != json(1)) {
                json c = in;
                c.at("presentation").at("colors").at(addr) = 1;
                out.push_back(std::move(c));
            }
    } else if (kind == "graph-roundtrip" || kind == "graph-witness") {
        drop_each(json::json_pointer("/graph/edges"));
    } else if (kind == "orbit-equiv") {
        drop_each(json::json_pointer("/A"));
        drop_each(json::json_pointer("/B"));
    }
    return out;
}

} // namespace detail

/// Greedy minimization: repeatedly take the first one-step-smaller input
/// on which `fails` holds, until there is none.
template <class Fails>
json shrink_with(json in, Fails&& fails)
{
    for (std::size_t round = 0; round < 1000; ++round) {
        bool progressed = false;
        for (auto& cand : detail::shrink_steps(in))
            if (fails(cand)) {
                in = std::move(cand);
                progressed = true;
                break;
            }
        if (!progressed)
            break;
    }
    return in;
}

inline json shrink(json in, const options& opt)
{
    return shrink_with(std::move(in), [&](const json& cand) {
        try {
            return replay_case(cand, opt).has_value();
        } catch (const std::exception&) {
            return false;
        }
    });
}

inline std::string repro_command(const std::string& suite, const json& input)
{
    std::string text = input.dump();
    std::string quoted;
    for (char ch : text)
        quoted += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    return "scott verify " + suite + " --case '" + quoted + "'";
}

namespace detail {

class recorder {
public:
    recorder(report& r, const options& opt) : r_(r), opt_(opt) {}

    /// One case: fn() yields the outcome, input() the replayable JSON.
    template <class Fn, class In>
    void run(const std::string& label, Fn&& fn, In&& input)
    {
        ++r_.cases;
        outcome msg;
        try {
            msg = fn();
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        if (!msg)
            return;
        ++r_.failure_count;
        if (r_.failures.size() >= max_recorded_failures)
            return;
        json in = shrink(input(), opt_);
        std::string final_msg = *msg;
        try {
            if (auto again = replay_case(in, opt_))
                final_msg = *again;
        } catch (const std::exception& e) {
            final_msg = std::string("exception: ") + e.what();
        }
        r_.failures.push_back({label, in, final_msg, repro_command(r_.suite, in)});
    }

private:
    report& r_;
    const options& opt_;
};

inline json set_json(const std::set<std::string>& s)
{
    return json(std::vector<std::string>(s.begin(), s.end()));
}

// --- suites ---------------------------------------------------------------

inline void core_oracle(report& r, const options& opt, campaign_rng& rng)
{
    recorder rec(r, opt);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<core::finite_structure> ms;
        std::vector<core::scott_sentence_value> css;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            ms.push_back(digraph(n, mask));
            css.push_back(core::scott_sentence(ms.back()));
        }
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i; j < ms.size(); ++j)
                rec.run(
                    "exhaustive/" + std::to_string(n) + "/" + std::to_string(i) + "/" + std::to_string(j),
                    [&] { return check::iso_agreement(ms[i], ms[j], css[i] == css[j], opt.oracle_bound); },
                    [&] { return json{{"check", "iso-agreement"}, {"a", ms[i]}, {"b", ms[j]}}; });
        r.observations["exhaustive_structures_size_" + std::to_string(n)] = ms.size();
    }
    json counted;
    rec.run(
        "digraph-count", [&] { return check::digraph_count(opt.oracle_bound, &counted); },
        [] { return json{{"check", "digraph-count"}}; });
    r.observations["digraph_count"] = counted;

    std::uint64_t isomorphic = 0;
    for (std::uint64_t c = 0; c < opt.budget; ++c) {
        const std::size_t n = 4 + rng.below(2);
        const auto m = random_digraph(rng, n);
        core::finite_structure other = m;
        switch (rng.below(3)) {
        case 0:
            other = m.relabel(random_perm(rng, n));
            break;
        case 1: {
            const core::tuple cell{static_cast<core::element>(rng.below(n)), static_cast<core::element>(rng.below(n))};
            std::vector<std::set<core::tuple>> rel{m.relation(0)};
            if (!rel[0].erase(cell))
                rel[0].insert(cell);
            other = core::finite_structure(m.sig(), n, std::move(rel)).relabel(random_perm(rng, n));
            break;
        }
        default:
            other = random_digraph(rng, n);
        }
        bool css = false;
        rec.run(
            "random/" + std::to_string(c),
            [&] {
                css = core::css_equal(m, other);
                return check::iso_agreement(m, other, css, opt.oracle_bound);
            },
            [&] { return json{{"check", "iso-agreement"}, {"a", m}, {"b", other}}; });
        isomorphic += css ? 1 : 0;
    }
    r.observations["random_pairs"] = opt.budget;
    r.observations["random_isomorphic_pairs"] = isomorphic;
}

inline void ref_inject(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    const auto sets = binary_subsets(3, 3);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            rec.run(
                "pair/" + std::to_string(i) + "/" + std::to_string(j),
                [&] { return check::ref_inject(sets[i], sets[j]); },
                [&] { return json{{"check", "ref-inject"}, {"I", set_json(sets[i])}, {"J", set_json(sets[j])}}; });
    r.observations["sets"] = sets.size();
}

inline void ref_tree(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    const auto trees = all_trees(2, 2);
    for (std::size_t i = 0; i < trees.size(); ++i)
        rec.run(
            "tree/" + std::to_string(i), [&] { return check::ref_tree(trees[i]); },
            [&] { return json{{"check", "ref-tree"}, {"tree", set_json(trees[i])}}; });
    r.observations["trees"] = trees.size();
}

inline void ref_roundtrip(report& r, const options& opt, campaign_rng& rng)
{
    recorder rec(r, opt);
    for (std::uint64_t c = 0; c < opt.budget; ++c) {
        const auto p = random_bin(rng, 1 + rng.below(4), 4);
        const auto perm_seed = rng.next();
        rec.run(
            "random/" + std::to_string(c), [&] { return check::ref_roundtrip(p, perm_seed); },
            [&] { return json{{"check", "ref-roundtrip"}, {"presentation", p}, {"perm_seed", perm_seed}}; });
    }
}

inline void grp_rigidity(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    json found = json::array();
    auto one = [&](bool is_xor, std::size_t d, std::size_t len, const json& expected) {
        json got;
        const std::string kind = is_xor ? "xor" : "total";
        rec.run(
            kind + "/" + std::to_string(d) + "/" + std::to_string(len),
            [&] { return check::rigidity(is_xor, d, len, expected, &got); },
            [&] {
                return json{{"check", "rigidity"}, {"kind", kind}, {"depth", d}, {"tuple_len", len}, {"expected", expected}};
            });
        found.push_back({{"kind", kind},
                         {"depth", d},
                         {"tuple_len", len},
                         {"counterexample", got},
                         {"expected_positive", !expected.is_null()}});
    };
    for (std::size_t d = 1; d <= 3; ++d)
        for (std::size_t len = 1; len <= 2; ++len)
            one(true, d, len, nullptr);
    one(false, 2, 1, json{{"a", {"00"}}, {"b", {"10"}}, {"c", {"11"}}});
    r.observations["searches"] = found;
}

inline void grp_reduction(report& r, const options& opt, campaign_rng& rng)
{
    recorder rec(r, opt);
    auto both = [&](const std::string& label, const grpact::graph_instance& g, const std::vector<std::size_t>& sigma,
                    std::uint64_t sample_seed, bool roundtrip) {
        if (roundtrip)
            rec.run(
                label + "/roundtrip", [&] { return check::graph_roundtrip(g); },
                [&] { return json{{"check", "graph-roundtrip"}, {"graph", g}}; });
        rec.run(
            label + "/witness", [&] { return check::graph_witness(g, sigma, sample_seed); },
            [&] { return json{{"check", "graph-witness"}, {"graph", g}, {"sigma", sigma}, {"sample_seed", sample_seed}}; });
    };
    std::uint64_t exhaustive = 0;
    for (std::size_t v = 1; v <= 3; ++v) {
        const auto graphs = all_graphs(v);
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            std::vector<std::size_t> sigma(v);
            std::iota(sigma.begin(), sigma.end(), 0);
            bool first = true;
            do {
                both("v" + std::to_string(v) + "/" + std::to_string(gi) + "/sigma" + std::to_string(exhaustive),
                     graphs[gi], sigma, rng.next(), first);
                first = false;
                ++exhaustive;
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
    }
    const std::uint64_t sampled = std::max<std::uint64_t>(1, opt.budget / 10);
    const auto four = all_graphs(4);
    for (std::uint64_t c = 0; c < sampled; ++c) {
        const auto& g = four[rng.below(four.size())];
        const auto perm = rng.permutation(4);
        both("v4/sample" + std::to_string(c), g, perm, rng.next(), true);
    }
    rec.run(
        "two-group-obstruction", [] { return check::two_group_obstruction(); },
        [] { return json{{"check", "two-group-obstruction"}}; });
    r.observations["isomorphisms_exhaustive"] = exhaustive;
    r.observations["isomorphisms_sampled_v4"] = sampled;
    r.observations["branches_per_witness"] = witness_samples;
}

inline void grp_k_coding(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    const auto sets = binary_subsets(3, 2);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j)
            rec.run(
                "pair/" + std::to_string(i) + "/" + std::to_string(j), [&] { return check::k_coding(sets[i], sets[j]); },
                [&] { return json{{"check", "k-coding"}, {"X", set_json(sets[i])}, {"Y", set_json(sets[j])}}; });
    r.observations["sets"] = sets.size();
}

inline void orbit_main(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    const auto subsets = orbit::all_subsets(4);
    json actions = json::array();
    for (const auto& [name, act] : orbit::subgroups_of_s4()) {
        actions.push_back({{"name", name}, {"order", act.group_size()}});
        for (std::size_t i = 0; i < subsets.size(); ++i)
            for (std::size_t j = 0; j < subsets.size(); ++j)
                rec.run(
                    name + "/equiv/" + std::to_string(i) + "/" + std::to_string(j),
                    [&] { return check::orbit_equiv(act, subsets[i], subsets[j], opt.oracle_bound); },
                    [&] { return json{{"check", "orbit-equiv"}, {"action", act}, {"A", subsets[i]}, {"B", subsets[j]}}; });
        for (const auto& a : subsets) {
            if (a.size() > 3)
                continue;
            for (const auto& b : subsets) {
                if (b.size() != a.size())
                    continue;
                auto image = b;
                do {
                    std::vector<std::pair<orbit::point, orbit::point>> pairs;
                    for (std::size_t k = 0; k < a.size(); ++k)
                        pairs.emplace_back(a[k], image[k]);
                    rec.run(
                        name + "/lift", [&] { return check::orbit_lift(act, pairs); },
                        [&] { return json{{"check", "orbit-lift"}, {"action", act}, {"pairs", pairs}}; });
                } while (std::next_permutation(image.begin(), image.end()));
            }
        }
    }
    r.observations["actions"] = actions;
}

inline void comb_growth(report& r, const options& opt, campaign_rng&)
{
    recorder rec(r, opt);
    auto count_case = [&](std::size_t k, std::uint64_t base, std::uint64_t cap) {
        rec.run(
            "count/" + std::to_string(k) + "/" + std::to_string(base) + "/" + std::to_string(cap),
            [&] { return check::count_agrees(k, base, cap); },
            [&] { return json{{"check", "count-level"}, {"level", k}, {"base", base}, {"cap", cap}}; });
    };
    for (std::uint64_t base = 1; base <= 3; ++base)
        for (std::uint64_t cap = 2; cap <= 3; ++cap)
            for (std::size_t k = 0; k <= 1; ++k)
                count_case(k, base, cap);
    count_case(2, 1, 2);
    count_case(2, 1, 3);
    count_case(2, 2, 2);
    for (std::uint64_t base = 1; base <= 3; ++base)
        for (std::uint64_t cap = 2; cap <= 3; ++cap)
            for (std::size_t k = 0; k <= 2; ++k)
                rec.run(
                    "growth/" + std::to_string(k) + "/" + std::to_string(base) + "/" + std::to_string(cap),
                    [&] { return check::count_grows(k, base, cap); },
                    [&] { return json{{"check", "count-growth"}, {"level", k}, {"base", base}, {"cap", cap}}; });

    // Assemblies use 3-cycles, so the chain budget follows the oracle bound.
    constexpr std::size_t cycle_len = 3;
    const std::uint64_t units = std::clamp<std::uint64_t>(opt.oracle_bound / cycle_len, 1, 3);
    const auto invs = comb::small_invariants(2, 2, units);
    const auto sig = comb::assembly_signature(invs);
    std::vector<core::finite_structure> ms;
    std::vector<core::scott_sentence_value> css;
    for (const auto& inv : invs) {
        ms.push_back(comb::assemble(inv, cycle_len, sig));
        css.push_back(core::scott_sentence(ms.back()));
    }
    for (std::size_t i = 0; i < invs.size(); ++i)
        for (std::size_t j = i; j < invs.size(); ++j)
            rec.run(
                "assembly/" + invs[i].key() + "/" + invs[j].key(),
                [&] { return check::assembly_faithful(invs[i], invs[j], css[i] == css[j], ms[i], ms[j], opt.oracle_bound); },
                [&] { return json{{"check", "assembly"}, {"a", invs[i]}, {"b", invs[j]}, {"cycle_len", cycle_len}}; });
    r.observations["faithfulness_invariants"] = invs.size();
    r.observations["faithfulness_max_chains"] = units;
}

inline const std::map<std::string, void (*)(report&, const options&, campaign_rng&)>& suites()
{
    static const std::map<std::string, void (*)(report&, const options&, campaign_rng&)> table{
        {"core-oracle", core_oracle},   {"ref-inject", ref_inject},     {"ref-tree", ref_tree},
        {"ref-roundtrip", ref_roundtrip}, {"grp-rigidity", grp_rigidity}, {"grp-reduction", grp_reduction},
        {"grp-k-coding", grp_k_coding}, {"orbit-main", orbit_main},     {"comb-growth", comb_growth},
    };
    return table;
}

} // namespace detail

inline report verify_campaign(const std::string& suite, const options& opt)
{
    const auto start = std::chrono::steady_clock::now();
    report r;
    r.suite = suite;
    r.seed = opt.seed;
    r.budget = opt.budget;
    if (suite == "all") {
        for (const auto& name : suite_names()) {
            r.parts.push_back(verify_campaign(name, opt));
            r.cases += r.parts.back().cases;
            r.failure_count += r.parts.back().failure_count;
        }
    } else {
        const auto& table = detail::suites();
        const auto it = table.find(suite);
        if (it == table.end())
            throw input_error("unknown suite " + suite);
        campaign_rng rng(suite_seed(opt.seed, suite));
        it->second(r, opt, rng);
    }
    r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline json to_json(const report& r)
{
    json j{{"suite", r.suite},
           {"seed", r.seed},
           {"budget", r.budget},
           {"cases", r.cases},
           {"failure_count", r.failure_count},
           {"passed", r.passed()},
           {"wall_time_ms", r.wall_time_ms}};
    json fs = json::array();
    for (const auto& f : r.failures)
        fs.push_back({{"case", f.label}, {"input", f.input}, {"message", f.message}, {"repro", f.repro}});
    j["failures"] = fs;
    if (r.parts.empty()) {
        j["observations"] = r.observations;
    } else {
        json parts = json::array();
        for (const auto& p : r.parts)
            parts.push_back(to_json(p));
        j["suites"] = parts;
    }
    return j;
}

/// The report with every wall-time field removed, for determinism checks.
inline json without_wall_time(json j)
{
    if (j.is_object()) {
        j.erase("wall_time_ms");
        for (auto& [k, v] : j.items())
            v = without_wall_time(v);
    } else if (j.is_array()) {
        for (auto& v : j)
            v = without_wall_time(v);
    }
    return j;
}

} // namespace scott::verify
