#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scott/combinators/assemble.hpp"
#include "scott/combinators/invariant.hpp"
#include "scott/core/ef_game.hpp"
#include "scott/core/oracle.hpp"
#include "scott/core/sentence.hpp"
#include "scott/grpact/graph_coding.hpp"
#include "scott/grpact/rigidity.hpp"
#include "scott/io/json.hpp"
#include "scott/orbit/orbit.hpp"
#include "scott/ref/data.hpp"
#include "scott/ref/encoders.hpp"
#include "scott/verify/campaign.hpp"

namespace {

using namespace scott;
using io::json;

enum exit_code : int { ok = 0, predicate_false = 1, usage_error = 2, verification_failed = 3 };

template <class T>
T load(const std::string& path)
{
    return io::read<T>(io::load_file(path));
}

int emit(const json& j, bool predicate = true)
{
    std::cout << j.dump() << '\n';
    return predicate ? ok : predicate_false;
}

std::size_t oracle_bound()
{
    const char* env = std::getenv("SCOTT_ORACLE_BOUND");
    if (!env || !*env)
        return core::default_oracle_bound;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used == std::string(env).size())
            return v;
    } catch (const std::exception&) {
    }
    throw input_error("SCOTT_ORACLE_BOUND must be a non-negative integer");
}

grpact::search_kind search_kind_of(const std::string& kind, std::size_t depth)
{
    if (kind == "xor")
        return grpact::xor_kind{depth};
    if (kind == "total")
        return grpact::total_kind{depth};
    throw input_error("--kind must be xor or total");
}

json element_json(const orbit::finite_action& act, std::size_t g)
{
    return {{"index", g}, {"permutation", act.perm(g)}};
}

struct cli_state {
    std::string format = "json";
    std::string a, b;
    std::size_t rounds = 0;
    std::size_t depth = 0;
    std::size_t width = 2;
    std::uint64_t cap = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 100;
    std::size_t level = 0;
    std::uint64_t base = 0;
    std::uint64_t chains = 0;
    std::size_t per_block = 2;
    std::size_t fillers = 1;
    std::size_t tuple_len = 1;
    std::size_t cycle_len = 3;
    std::size_t samples = verify::witness_samples;
    std::string kind = "xor";
    std::string suite;
    std::string case_json;
    std::vector<std::size_t> sigma;
    std::vector<orbit::point> set_a, set_b;
    std::vector<std::string> pairs;
};

std::vector<std::pair<orbit::point, orbit::point>> parse_pairs(const std::vector<std::string>& items)
{
    std::vector<std::pair<orbit::point, orbit::point>> out;
    for (const auto& s : items) {
        const auto colon = s.find(':');
        if (colon == std::string::npos)
            throw input_error("--pairs entries must look like a:b");
        try {
            out.emplace_back(static_cast<orbit::point>(std::stoul(s.substr(0, colon))),
                             static_cast<orbit::point>(std::stoul(s.substr(colon + 1))));
        } catch (const std::logic_error&) {
            throw input_error("--pairs entries must look like a:b");
        }
    }
    return out;
}

int run_verify(const cli_state& st)
{
    verify::options opt{st.seed, st.budget, oracle_bound()};
    if (!st.case_json.empty()) {
        const auto in = io::parse_text(st.case_json);
        const auto msg = verify::replay_case(in, opt);
        json out{{"suite", st.suite}, {"check", in.at("check")}, {"passed", !msg.has_value()}};
        if (msg)
            out["message"] = *msg;
        std::cout << out.dump() << '\n';
        return msg ? verification_failed : ok;
    }
    const auto r = verify::verify_campaign(st.suite, opt);
    std::cout << verify::to_json(r).dump(2) << '\n';
    if (!r.passed())
        std::cerr << r.failure_count << " failing case(s) in " << r.suite << '\n';
    return r.passed() ? ok : verification_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Canonical Scott sentences, presentations, reductions and invariants for finite structures"};
    app.require_subcommand(1);
    cli_state st;
    int status = ok;
    app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"json"}));

    auto files2 = [&](CLI::App* c) {
        c->add_option("A", st.a, "First input file")->required();
        c->add_option("B", st.b, "Second input file")->required();
    };
    auto file1 = [&](CLI::App* c, const char* what) { c->add_option("FILE", st.a, what)->required(); };

    // core
    auto* css = app.add_subcommand("css", "Canonical Scott sentence of a structure");
    file1(css, "Structure file");
    css->callback([&] {
        const auto m = load<core::finite_structure>(st.a);
        const auto s = core::scott_sentence(m);
        status = emit({{"css", s.hex()}, {"bytes", s.bytes().size()}});
    });

    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two structures");
    files2(iso);
    iso->callback([&] {
        const auto m = load<core::finite_structure>(st.a), n = load<core::finite_structure>(st.b);
        core::require_same_signature(m, n);
        const bool same = core::css_equal(m, n);
        json out{{"isomorphic", same}};
        if (same && m.size() <= oracle_bound())
            if (const auto w = core::brute_force_iso(m, n, oracle_bound()))
                out["witness"] = w->mapping;
        status = emit(out, same);
    });

    auto* ef = app.add_subcommand("ef", "Solve the Ehrenfeucht-Fraisse game");
    files2(ef);
    ef->add_option("--rounds", st.rounds, "Number of rounds")->required();
    ef->callback([&] {
        const bool wins = core::ef_equiv(load<core::finite_structure>(st.a), load<core::finite_structure>(st.b), st.rounds);
        status = emit({{"duplicator_wins", wins}, {"rounds", st.rounds}}, wins);
    });

    // ref
    auto* ref = app.add_subcommand("ref", "Refining equivalence relations");
    ref->require_subcommand(1);
    auto* enc_set = ref->add_subcommand("encode-set", "Encode a set of binary strings as a BIN presentation");
    file1(enc_set, "JSON array of binary strings");
    enc_set->add_option("--depth", st.depth, "Tree depth")->required();
    enc_set->callback([&] { status = emit(ref::encode_set_refbin(load<std::set<std::string>>(st.a), st.depth)); });

    auto* dec_set = ref->add_subcommand("decode-set", "Recover the encoded set of a BIN presentation");
    file1(dec_set, "Presentation file");
    dec_set->callback([&] { status = emit(ref::decode_set_refbin(load<ref::presentation>(st.a))); });

    auto* enc_tree = ref->add_subcommand("encode-tree", "Encode a tree as an INF presentation");
    file1(enc_tree, "Tree file");
    enc_tree->add_option("--depth", st.depth, "Presentation depth")->required();
    enc_tree->add_option("--width", st.width, "Splitting width");
    enc_tree->callback([&] {
        status = emit(ref::encode_tree_refinf(load<ref::labeled_tree>(st.a), st.depth, st.width));
    });

    auto* tree_inv = ref->add_subcommand("tree-inv", "Recover the tree of an INF presentation");
    file1(tree_inv, "Presentation file");
    tree_inv->callback([&] {
        const auto t = ref::tree_invariant(load<ref::presentation>(st.a));
        status = t ? emit(*t) : emit(nullptr, false);
    });

    auto* data = ref->add_subcommand("data", "Data invariant of a presentation");
    file1(data, "Presentation file");
    data->callback([&] { status = emit(ref::compute_data(load<ref::presentation>(st.a))); });

    auto* unpack = ref->add_subcommand("unpack", "Presentation realizing a data invariant");
    file1(unpack, "Data file");
    unpack->callback([&] { status = emit(ref::unpack_data(load<ref::ref_data>(st.a))); });

    auto* requiv = ref->add_subcommand("equiv", "Back-and-forth equivalence of two presentations");
    files2(requiv);
    requiv->callback([&] {
        const bool e = ref::presentations_equiv(load<ref::presentation>(st.a), load<ref::presentation>(st.b));
        status = emit({{"equivalent", e}}, e);
    });

    // grpact
    auto* grp = app.add_subcommand("grp", "Tree colorings under group actions");
    grp->require_subcommand(1);
    auto* act = grp->add_subcommand("act", "Apply a group element to a family of colorings");
    act->add_option("ELEMENT", st.a, "Group element file")->required();
    act->add_option("FAMILY", st.b, "Family file")->required();
    act->callback([&] {
        const auto img = grpact::act(load<grpact::group_elem>(st.a), load<grpact::family>(st.b));
        status = img ? emit(*img) : emit(nullptr, false);
    });

    auto* gequiv = grp->add_subcommand("equiv", "Search a group element mapping one family onto another");
    files2(gequiv);
    gequiv->add_option("--kind", st.kind, "xor or total")->check(CLI::IsMember({"xor", "total"}));
    gequiv->add_option("--depth", st.depth, "Group depth")->required();
    gequiv->callback([&] {
        const auto g = grpact::equiv_families(load<grpact::family>(st.a), load<grpact::family>(st.b),
                                              search_kind_of(st.kind, st.depth));
        json out{{"equivalent", g.has_value()}};
        if (g)
            out["element"] = *g;
        status = emit(out, g.has_value());
    });

    auto* enc_graph = grp->add_subcommand("encode-graph", "Encode a graph as a family of pair colorings");
    file1(enc_graph, "Graph file");
    enc_graph->add_option("--per-block", st.per_block, "Representatives per block");
    enc_graph->add_option("--depth", st.depth, "Truncation depth")->required();
    enc_graph->callback([&] {
        status = emit(grpact::encode_graph_tk(load<grpact::graph_instance>(st.a), st.per_block, st.depth).materialized);
    });

    auto* dec_graph = grp->add_subcommand("decode-graph", "Recover a graph from its encoding");
    file1(dec_graph, "Family file");
    dec_graph->callback([&] { status = emit(grpact::decode_graph_tk(load<grpact::family>(st.a))); });

    auto* witness = grp->add_subcommand("witness", "Lazy tree automorphism realizing a graph isomorphism");
    file1(witness, "Graph file");
    witness->add_option("--sigma", st.sigma, "Vertex permutation")->required()->delimiter(',');
    witness->add_option("--samples", st.samples, "Number of sampled branches");
    witness->add_option("--seed", st.seed, "Sampling seed");
    witness->callback([&] {
        const auto g = load<grpact::graph_instance>(st.a);
        const auto enc = grpact::encode_graph_tk(g, 2, g.vertices() + 2);
        auto f = grpact::lazy_claim_witness(st.sigma, enc.symbolic.scheme);
        const bool maps = grpact::witness_maps_family(f, enc, {g.relabel(st.sigma), enc.symbolic.scheme});
        campaign_rng rng(st.seed);
        for (std::size_t i = 0; i < st.samples; ++i)
            f.branch(verify::random_bits(rng, 1 + rng.below(10)));
        json branches = json::object();
        for (const auto& [src, dst] : f.answered())
            branches[src] = dst;
        status = emit({{"maps_family", maps}, {"branches", branches}}, maps);
    });

    auto* set_k = grp->add_subcommand("encode-set-k", "Encode a set of binary strings as a family");
    file1(set_k, "JSON array of binary strings");
    set_k->add_option("--depth", st.depth, "Tree depth")->required();
    set_k->add_option("--fillers", st.fillers, "Number of constant filler colorings");
    set_k->callback([&] { status = emit(grpact::encode_set_k(load<std::set<std::string>>(st.a), st.depth, st.fillers)); });

    auto* rigid = grp->add_subcommand("rigidity", "Search a rigidity counterexample");
    rigid->add_option("--kind", st.kind, "xor or total")->check(CLI::IsMember({"xor", "total"}));
    rigid->add_option("--depth", st.depth, "Tree depth")->required();
    rigid->add_option("--tuple-len", st.tuple_len, "Tuple length");
    rigid->callback([&] {
        const auto w = grpact::find_rigidity_counterexample(search_kind_of(st.kind, st.depth), st.tuple_len);
        status = emit({{"rigid", !w.has_value()}, {"counterexample", verify::check::witness_json(w)}}, !w.has_value());
    });

    // orbit
    auto* orb = app.add_subcommand("orbit", "Orbit structures of finite group actions");
    orb->require_subcommand(1);
    auto* build = orb->add_subcommand("build", "Orbit structure of a subset");
    file1(build, "Action file");
    build->add_option("--subset", st.set_a, "Points")->delimiter(',');
    build->callback([&] { status = emit(orbit::build_orbit_structure(load<orbit::finite_action>(st.a), st.set_a)); });

    auto* oequiv = orb->add_subcommand("equiv", "Group element carrying one subset onto another");
    file1(oequiv, "Action file");
    oequiv->add_option("--a", st.set_a, "First subset")->delimiter(',');
    oequiv->add_option("--b", st.set_b, "Second subset")->delimiter(',');
    oequiv->callback([&] {
        const auto action = load<orbit::finite_action>(st.a);
        const auto g = orbit::equiv_sets(action, st.set_a, st.set_b);
        json out{{"equivalent", g.has_value()}};
        if (g)
            out["element"] = element_json(action, *g);
        status = emit(out, g.has_value());
    });

    auto* lift = orb->add_subcommand("lift", "Group element extending a bijection");
    file1(lift, "Action file");
    lift->add_option("--pairs", st.pairs, "Pairs a:b")->delimiter(',');
    lift->callback([&] {
        const auto action = load<orbit::finite_action>(st.a);
        const auto g = orbit::lift_bijection(action, parse_pairs(st.pairs));
        json out{{"liftable", g.has_value()}};
        if (g)
            out["element"] = element_json(action, *g);
        status = emit(out, g.has_value());
    });

    auto* nice = orb->add_subcommand("nice", "Whether a structure is realized by some subset");
    nice->add_option("ACTION", st.a, "Action file")->required();
    nice->add_option("STRUCTURE", st.b, "Orbit structure file")->required();
    nice->callback([&] {
        const bool r = orbit::embeds_as_nice(load<orbit::finite_action>(st.a), load<orbit::orbit_structure>(st.b));
        status = emit({{"nice", r}}, r);
    });

    // combinators
    auto* comb = app.add_subcommand("comb", "Jump and product invariants");
    comb->require_subcommand(1);
    auto* t0 = comb->add_subcommand("t0", "Invariant of a disjoint union of chains");
    t0->add_option("--chains", st.chains, "Number of chains")->required();
    t0->add_option("--cap", st.cap, "Cap")->required();
    t0->callback([&] { status = emit(comb::t0_invariant(st.chains, st.cap)); });

    auto* jump = comb->add_subcommand("jump", "Jump of a list of invariants");
    file1(jump, "JSON array of invariants");
    jump->add_option("--cap", st.cap, "Cap")->required();
    jump->callback([&] {
        status = emit(comb::jump_invariant(load<std::vector<comb::nested_invariant>>(st.a), st.cap));
    });

    auto* prod = comb->add_subcommand("product", "Product of a list of invariants");
    file1(prod, "JSON array of invariants");
    prod->callback([&] { status = emit(comb::product_invariant(load<std::vector<comb::nested_invariant>>(st.a))); });

    auto* assemble = comb->add_subcommand("assemble", "Finite model of an invariant");
    file1(assemble, "Invariant file");
    assemble->add_option("--cycle-len", st.cycle_len, "Cycle length");
    assemble->callback([&] { status = emit(comb::assemble(load<comb::nested_invariant>(st.a), st.cycle_len)); });

    auto* count = comb->add_subcommand("count", "Number of level-k invariants");
    count->add_option("--level", st.level, "Level")->required();
    count->add_option("--base", st.base, "Number of base values")->required();
    count->add_option("--cap", st.cap, "Cap")->required();
    count->callback([&] { status = emit(comb::count_level(st.level, st.base, st.cap)); });

    // verify
    auto* ver = app.add_subcommand("verify", "Run a seeded verification campaign");
    std::vector<std::string> suites = verify::suite_names();
    suites.push_back("all");
    ver->add_option("SUITE", st.suite, "Suite name")->required()->check(CLI::IsMember(suites));
    ver->add_option("--seed", st.seed, "Campaign seed");
    ver->add_option("--budget", st.budget, "Random cases per randomized suite");
    ver->add_option("--case", st.case_json, "Replay one case given as JSON");
    ver->callback([&] { status = run_verify(st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return e.get_exit_code() == 0 ? rc : usage_error;
    } catch (const limit_exceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const io::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    }
    return status;
}
