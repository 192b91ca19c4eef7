#include <gtest/gtest.h>

#include "scott/combinators/enumerate.hpp"
#include "scott/io/json.hpp"
#include "scott/orbit/catalog.hpp"
#include "scott/ref/data.hpp"
#include "support.hpp"

namespace {

using namespace scott;
using io::json;

template <class T>
void expect_round_trip(const T& v)
{
    const json j = v;
    const auto back = io::read<T>(io::parse_text(j.dump()));
    EXPECT_TRUE(back == v) << j.dump();
    EXPECT_EQ(json(back).dump(), j.dump());
}

TEST(Json, ExtNat)
{
    expect_round_trip(ext_nat(0));
    expect_round_trip(ext_nat(17));
    expect_round_trip(ext_nat::omega());
    EXPECT_THROW(io::read<ext_nat>(json("infinity")), input_error);
    EXPECT_THROW(io::read<ext_nat>(json(-1)), input_error);
}

TEST(Json, StructureRoundTripAndSpecShape)
{
    campaign_rng rng(1);
    for (int i = 0; i < 20; ++i)
        expect_round_trip(fixtures::random_digraph(rng, 1 + rng.below(4)));
    const auto m = io::read<core::finite_structure>(io::parse_text(
        R"({"sig":[{"name":"R","arity":2},{"name":"P","arity":1}],"size":3,"interp":{"R":[[0,1],[1,2]]}})"));
    EXPECT_EQ(m.size(), 3u);
    EXPECT_TRUE(m.relation(1).empty());
    EXPECT_THROW(io::read<core::finite_structure>(io::parse_text(R"({"sig":[],"size":2,"interp":{"Q":[[0]]}})")),
                 input_error);
    EXPECT_THROW(io::read<core::finite_structure>(io::parse_text(R"({"sig":[{"name":"R","arity":2}],"size":2,"interp":{"R":[[0,2]]}})")),
                 input_error);
    EXPECT_THROW(io::read<core::finite_structure>(io::parse_text(R"({"size":2})")), input_error);
}

TEST(Json, Presentations)
{
    campaign_rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const auto p = fixtures::random_bin(rng, 1 + rng.below(4), 4);
        expect_round_trip(p);
        expect_round_trip(ref::compute_data(p));
    }
    const auto inf = io::read<ref::presentation>(
        io::parse_text(R"({"variant":{"inf":3},"depth":1,"colors":{"0":1,"1":"omega","2":2}})"));
    EXPECT_EQ(inf.width(), 3u);
    EXPECT_TRUE(inf.color("1").is_omega());
    expect_round_trip(inf);
    expect_round_trip(ref::compute_data(inf));
    EXPECT_THROW(io::read<ref::presentation>(io::parse_text(R"({"variant":"bin","depth":1,"colors":{"0":1}})")),
                 input_error);
    EXPECT_THROW(io::read<ref::presentation>(io::parse_text(R"({"variant":"bin","depth":1,"colors":{"0":1,"2":1}})")),
                 input_error);
}

TEST(Json, Trees)
{
    for (const auto& t : fixtures::all_trees(2, 2))
        expect_round_trip(t);
    EXPECT_THROW(io::read<ref::labeled_tree>(io::parse_text(R"({"nodes":["","01"]})")), input_error);
}

TEST(Json, ColoringsGraphsAndElements)
{
    expect_round_trip(grpact::coloring({{"", 1}, {"0", 2}, {"01", 3}}));
    expect_round_trip(grpact::graph_instance(3, {{0, 1}, {1, 2}}));
    expect_round_trip(grpact::group_elem(grpact::xor_elem{"0110"}));
    expect_round_trip(grpact::group_elem(grpact::partial_elem(std::map<std::string, std::string>{{"", ""}, {"0", "1"}})));
    expect_round_trip(grpact::group_elem(grpact::total_elem::from_code(2, 5)));
    const auto fam = grpact::encode_set_k({"010", "111"}, 3, 1);
    expect_round_trip(fam);
    EXPECT_THROW(io::read<grpact::coloring>(io::parse_text(R"({"values":{"0":1}})")), input_error);
    EXPECT_THROW(io::read<grpact::group_elem>(io::parse_text(R"({"xor":"012"})")), input_error);
    EXPECT_THROW(io::read<grpact::group_elem>(io::parse_text(R"({"swap":"01"})")), input_error);
}

TEST(Json, ActionsAndOrbitStructures)
{
    for (const auto& [name, act] : orbit::subgroups_of_s4()) {
        const json j = act;
        const auto back = io::read<orbit::finite_action>(io::parse_text(j.dump()));
        EXPECT_EQ(json(back).dump(), j.dump());
        for (const auto& a : orbit::all_subsets(4))
            expect_round_trip(orbit::build_orbit_structure(act, a));
    }
    EXPECT_THROW(io::read<orbit::finite_action>(io::parse_text(R"({"n":2,"perms":[[1,0]]})")), input_error);
}

TEST(Json, Invariants)
{
    for (const auto& inv : comb::small_invariants(2, 2, 3))
        expect_round_trip(inv);
    expect_round_trip(comb::nested_invariant::jump({{comb::nested_invariant::base(ext_nat::omega()), ext_nat::omega()}}));
    const auto parsed = io::read<comb::nested_invariant>(
        io::parse_text(R"({"jump":[[{"base":2},1],[{"base":1},"omega"]]})"));
    EXPECT_EQ(parsed.children().front(), comb::nested_invariant::base(1));
    EXPECT_THROW(io::read<comb::nested_invariant>(io::parse_text(R"({"base":1,"prod":[]})")), input_error);
    EXPECT_THROW(io::read<comb::nested_invariant>(io::parse_text(R"({"prod":[]})")), input_error);
}

TEST(Json, MalformedText)
{
    EXPECT_THROW(io::parse_text("{"), input_error);
    EXPECT_THROW(io::load_file("/nonexistent/file.json"), input_error);
}

} // namespace
