#include <gtest/gtest.h>

#include "scott/verify/campaign.hpp"
#include "support.hpp"

namespace {

using namespace scott;
using verify::json;

TEST(Campaign, SuiteSeedsDifferPerSuiteAndSeed)
{
    EXPECT_NE(verify::suite_seed(0, "core-oracle"), verify::suite_seed(0, "ref-inject"));
    EXPECT_NE(verify::suite_seed(0, "core-oracle"), verify::suite_seed(1, "core-oracle"));
    EXPECT_EQ(verify::suite_seed(5, "orbit-main"), verify::suite_seed(5, "orbit-main"));
}

TEST(Campaign, FastSuitesPass)
{
    const verify::options opt{3, 20, core::default_oracle_bound};
    for (const char* suite : {"ref-inject", "ref-tree", "ref-roundtrip", "grp-rigidity", "grp-reduction",
                              "grp-k-coding", "orbit-main", "comb-growth"}) {
        const auto r = verify::verify_campaign(suite, opt);
        EXPECT_TRUE(r.passed()) << verify::to_json(r).dump();
        EXPECT_GT(r.cases, 0u) << suite;
    }
}

TEST(Campaign, ReportsAreDeterministicModuloWallTime)
{
    const verify::options opt{11, 30, core::default_oracle_bound};
    const auto a = verify::without_wall_time(verify::to_json(verify::verify_campaign("ref-roundtrip", opt)));
    const auto b = verify::without_wall_time(verify::to_json(verify::verify_campaign("ref-roundtrip", opt)));
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_FALSE(a.contains("wall_time_ms"));
    EXPECT_EQ(a.at("cases"), 30);
}

TEST(Campaign, RigidityObservationsNameTheExpectedPositive)
{
    const auto r = verify::verify_campaign("grp-rigidity", {1, 1, core::default_oracle_bound});
    ASSERT_TRUE(r.passed());
    const auto& searches = r.observations.at("searches");
    std::size_t positives = 0;
    for (const auto& s : searches) {
        if (s.at("kind") == "xor") {
            EXPECT_TRUE(s.at("counterexample").is_null());
        }
        if (s.at("expected_positive") == true) {
            ++positives;
            EXPECT_EQ(s.at("counterexample").at("b"), json({"10"}));
        }
    }
    EXPECT_EQ(positives, 1u);
}

TEST(Campaign, UnknownSuiteIsAnError)
{
    EXPECT_THROW(verify::verify_campaign("nope", {}), input_error);
}

TEST(Replay, PassingCasesOfEveryKind)
{
    const verify::options opt;
    const json m = fixtures::digraph(3, 0b000100010);
    const json n = fixtures::digraph(3, 0b000001100);
    const json act = orbit::generated_action(4, {{1, 2, 3, 0}});
    const std::vector<json> cases{
        {{"check", "iso-agreement"}, {"a", m}, {"b", n}},
        {{"check", "digraph-count"}},
        {{"check", "ref-inject"}, {"I", {"000"}}, {"J", {"001", "110"}}},
        {{"check", "ref-tree"}, {"tree", {"", "0", "01"}}},
        {{"check", "ref-roundtrip"},
         {"presentation", ref::presentation::bin(2, {ext_nat(1), ext_nat(2), ext_nat::omega(), ext_nat(1)})},
         {"perm_seed", 9}},
        {{"check", "rigidity"}, {"kind", "xor"}, {"depth", 2}, {"tuple_len", 1}, {"expected", nullptr}},
        {{"check", "graph-roundtrip"}, {"graph", grpact::graph_instance(3, {{0, 1}})}},
        {{"check", "graph-witness"}, {"graph", grpact::graph_instance(3, {{0, 1}})}, {"sigma", {1, 2, 0}}, {"sample_seed", 4}},
        {{"check", "two-group-obstruction"}},
        {{"check", "k-coding"}, {"X", {"010"}}, {"Y", {"010"}}},
        {{"check", "orbit-equiv"}, {"action", act}, {"A", {0, 2}}, {"B", {1, 3}}},
        {{"check", "orbit-lift"}, {"action", act}, {"pairs", {{0, 1}, {1, 2}}}},
        {{"check", "count-level"}, {"level", 1}, {"base", 3}, {"cap", 2}},
        {{"check", "count-growth"}, {"level", 0}, {"base", 2}, {"cap", 2}},
        {{"check", "assembly"},
         {"a", comb::nested_invariant::base(2)},
         {"b", comb::nested_invariant::jump({{comb::nested_invariant::base(1), 2}})},
         {"cycle_len", 3}},
    };
    for (const auto& c : cases) {
        const auto msg = verify::replay_case(c, opt);
        EXPECT_FALSE(msg.has_value()) << c.dump() << ": " << msg.value_or("");
    }
}

TEST(Replay, WrongExpectationFails)
{
    const json c{{"check", "rigidity"}, {"kind", "total"}, {"depth", 2}, {"tuple_len", 1}, {"expected", nullptr}};
    const auto msg = verify::replay_case(c, {});
    ASSERT_TRUE(msg.has_value());
    EXPECT_NE(msg->find("00"), std::string::npos);
}

TEST(Replay, MalformedCasesThrow)
{
    EXPECT_THROW(verify::replay_case(json::array(), {}), input_error);
    EXPECT_THROW(verify::replay_case({{"check", "nope"}}, {}), input_error);
    EXPECT_THROW(verify::replay_case({{"check", "ref-tree"}}, {}), input_error);
    EXPECT_THROW(verify::replay_case({{"check", "ref-tree"}, {"tree", {"", "01"}}}, {}), input_error);
}

TEST(Shrink, DropsTuplesWhileThePredicateHolds)
{
    const json in{{"check", "iso-agreement"}, {"a", fixtures::digraph(3, 0b111011011)}, {"b", fixtures::digraph(3, 0b1)}};
    // Stand-in failure: a still holds at least two tuples.
    const auto out = verify::shrink_with(in, [](const json& c) { return c.at("a").at("interp").at("R").size() >= 2; });
    EXPECT_EQ(out.at("a").at("interp").at("R").size(), 2u);
    EXPECT_TRUE(out.at("b").at("interp").at("R").empty());
}

TEST(Shrink, TreesLoseLeavesOnlyAndStayPrefixClosed)
{
    const json in{{"check", "ref-tree"}, {"tree", {"", "0", "00", "01", "1"}}};
    const auto out = verify::shrink_with(in, [](const json& c) {
        const auto nodes = c.at("tree").get<std::set<std::string>>();
        return nodes.count("01") != 0;
    });
    EXPECT_EQ(out.at("tree"), json({"", "0", "01"}));
}

TEST(Shrink, PassingInputIsKept)
{
    const json in{{"check", "k-coding"}, {"X", {"000", "111"}}, {"Y", {"000"}}};
    EXPECT_EQ(verify::shrink(in, {}), in);
}

TEST(Repro, QuotesForTheShell)
{
    const json in{{"check", "ref-tree"}, {"tree", {"", "it's"}}};
    const auto cmd = verify::repro_command("ref-tree", in);
    EXPECT_EQ(cmd.rfind("scott verify ref-tree --case '", 0), 0u);
    EXPECT_NE(cmd.find("it'\\''s"), std::string::npos);
}

} // namespace
