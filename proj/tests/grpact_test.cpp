#include <gtest/gtest.h>

#include <numeric>

#include "scott/grpact/graph_coding.hpp"
#include "scott/grpact/rigidity.hpp"
#include "scott/rng.hpp"

using namespace scott;
using namespace scott::grpact;

namespace {

std::string random_bits(campaign_rng& rng, std::size_t n)
{
    std::string s(n, '0');
    for (auto& ch : s)
        ch = rng.coin() ? '1' : '0';
    return s;
}

coloring random_coloring(campaign_rng& rng, std::size_t d)
{
    std::map<std::string, std::uint64_t> v{{"", 1 + rng.below(4)}};
    std::vector<std::string> frontier{""};
    while (!frontier.empty()) {
        auto s = frontier.back();
        frontier.pop_back();
        if (s.size() == d)
            continue;
        for (char ch : {'0', '1'})
            if (rng.below(3) != 0) {
                v[s + ch] = 1 + rng.below(4);
                frontier.push_back(s + ch);
            }
    }
    return coloring(v);
}

group_elem random_elem(campaign_rng& rng, bool is_xor, std::size_t d)
{
    if (is_xor)
        return xor_elem{random_bits(rng, d)};
    return total_elem::from_code(d, rng.below(std::uint64_t{1} << ((std::size_t{1} << d) - 1)));
}

std::vector<std::string> all_strings(std::size_t d)
{
    std::vector<std::string> out{""};
    for (std::size_t k = 0; k < out.size(); ++k)
        if (out[k].size() < d) {
            out.push_back(out[k] + '0');
            out.push_back(out[k] + '1');
        }
    return out;
}

// Naive rigidity oracle: enumerate every triple and test the three orbit
// conditions by trying every group element for each.
bool naive_rigidity_exists(bool is_xor, std::size_t d, std::size_t len)
{
    std::vector<group_elem> group;
    const std::uint64_t n = is_xor ? (1u << d) : (1u << ((1u << d) - 1));
    for (std::uint64_t code = 0; code < n; ++code) {
        if (is_xor) {
            std::string bits(d, '0');
            for (std::size_t i = 0; i < d; ++i)
                if ((code >> i) & 1u)
                    bits[i] = '1';
            group.push_back(xor_elem{bits});
        } else {
            group.push_back(total_elem::from_code(d, code));
        }
    }
    std::vector<std::string> leaves;
    for (const auto& s : all_strings(d))
        if (s.size() == d)
            leaves.push_back(s);
    auto image = [&](const group_elem& g, const std::string& s) {
        if (auto* x = std::get_if<xor_elem>(&g))
            return xor_image(*x, s);
        return std::get<total_elem>(g).image(s);
    };
    auto tuples = [&] {
        std::vector<std::vector<std::string>> out{{}};
        for (std::size_t i = 0; i < len; ++i) {
            std::vector<std::vector<std::string>> next;
            for (const auto& t : out)
                for (const auto& l : leaves) {
                    next.push_back(t);
                    next.back().push_back(l);
                }
            out = next;
        }
        return out;
    }();
    auto moves = [&](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        for (const auto& g : group) {
            bool ok = true;
            for (std::size_t i = 0; i < x.size() && ok; ++i)
                ok = image(g, x[i]) == y[i];
            if (ok)
                return true;
        }
        return false;
    };
    for (const auto& a : tuples)
        for (const auto& b : tuples)
            for (const auto& c : tuples) {
                if (b == c || !moves(a, b) || !moves(b, c))
                    continue;
                auto ab = a, ac = a;
                ab.insert(ab.end(), b.begin(), b.end());
                ac.insert(ac.end(), c.begin(), c.end());
                if (moves(ab, ac))
                    return true;
            }
    return false;
}

std::vector<graph_instance> all_graphs(std::size_t v)
{
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            slots.push_back({i, j});
    std::vector<graph_instance> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots.size()); ++m) {
        std::set<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if ((m >> k) & 1u)
                e.insert(slots[k]);
        out.emplace_back(v, e);
    }
    return out;
}

} // namespace

TEST(Coloring, Validation)
{
    EXPECT_THROW(coloring({{"0", 1}}), input_error);
    EXPECT_THROW(coloring({{"", 0}}), input_error);
    EXPECT_THROW(coloring({{"", 1}, {"2", 1}}), input_error);
    coloring c({{"", 5}, {"0", 1}, {"1", 2}, {"10", 7}});
    EXPECT_EQ(c(""), 5u);
    EXPECT_EQ(c("11"), 0u);
    EXPECT_EQ(c.depth(), 2u);
    EXPECT_EQ(c.leaves(), (std::vector<std::string>{"0", "10"}));
}

TEST(Act, XorFlipsLevelZero)
{
    coloring c({{"", 5}, {"0", 1}, {"1", 2}});
    auto img = act(xor_elem{"1"}, c);
    ASSERT_TRUE(img.has_value());
    EXPECT_EQ(*img, coloring({{"", 5}, {"0", 2}, {"1", 1}}));
    EXPECT_THROW(act(xor_elem{""}, c), limit_exceeded);
}

TEST(Act, IdentityAndPartialPrecondition)
{
    campaign_rng rng(41);
    auto c = random_coloring(rng, 3);
    EXPECT_EQ(*act(total_elem::identity(3), c), c);
    EXPECT_EQ(*act(xor_elem{"000"}, c), c);
    partial_elem small({{"", ""}, {"0", "1"}});
    EXPECT_FALSE(act(small, coloring({{"", 1}, {"1", 1}})).has_value());
    auto moved = act(small, coloring({{"", 1}, {"0", 4}}));
    ASSERT_TRUE(moved.has_value());
    EXPECT_EQ(*moved, coloring({{"", 1}, {"1", 4}}));
}

TEST(Act, PartialElementValidation)
{
    EXPECT_THROW(partial_elem(std::map<std::string, std::string>{{"0", "0"}}), input_error);
    EXPECT_THROW(partial_elem({{"", ""}, {"0", "11"}}), input_error);
    EXPECT_THROW(partial_elem({{"", ""}, {"0", "1"}, {"1", "1"}}), input_error);
    EXPECT_THROW(partial_elem({{"", ""}, {"0", "0"}, {"00", "10"}}), input_error);
}

TEST(Act, LawsAndValueInvariance)
{
    campaign_rng rng(43);
    for (int rep = 0; rep < 300; ++rep) {
        const bool is_xor = rng.coin();
        const std::size_t d = 1 + rng.below(4);
        auto g = random_elem(rng, is_xor, d), h = random_elem(rng, is_xor, d);
        auto c = random_coloring(rng, d);
        auto hc = act(h, c);
        ASSERT_TRUE(hc.has_value());
        EXPECT_EQ(*act(g, *hc), *act(compose(g, h), c));
        EXPECT_EQ(hc->value_multiset(), c.value_multiset());
        // The same law for partial elements restricted from total ones.
        if (!is_xor) {
            std::map<std::string, std::string> mg, mh;
            for (const auto& s : all_strings(d)) {
                mg[s] = std::get<total_elem>(g).image(s);
                mh[s] = std::get<total_elem>(h).image(s);
            }
            partial_elem pg(mg), ph(mh);
            EXPECT_EQ(*act(pg, *act(ph, c)), *act(compose(pg, ph), c));
            EXPECT_EQ(*act(ph, c), *hc);
        }
    }
}

TEST(EquivFamilies, Examples)
{
    coloring c({{"", 5}, {"0", 1}, {"1", 2}});
    coloring c2({{"", 5}, {"0", 2}, {"1", 1}});
    coloring c3({{"", 5}, {"0", 2}, {"1", 2}});
    auto id = equiv_families({c}, {c}, xor_kind{1});
    ASSERT_TRUE(id.has_value());
    EXPECT_EQ(std::get<xor_elem>(*id).bits, "0");
    auto flip = equiv_families({c}, {c2}, xor_kind{1});
    ASSERT_TRUE(flip.has_value());
    EXPECT_EQ(std::get<xor_elem>(*flip).bits, "1");
    EXPECT_FALSE(equiv_families({c}, {c3}, xor_kind{1}).has_value());
    EXPECT_TRUE(equiv_families({c}, {c2}, total_kind{1}).has_value());
    EXPECT_THROW(equiv_families({c}, {c}, total_kind{5}), limit_exceeded);
    EXPECT_THROW(equiv_families({c}, {c}, xor_kind{0}), input_error);
}

TEST(EquivFamilies, FindsPlantedWitnesses)
{
    campaign_rng rng(47);
    for (int rep = 0; rep < 60; ++rep) {
        const bool is_xor = rng.coin();
        const std::size_t d = 1 + rng.below(3);
        family a;
        for (std::size_t i = 0; i < 1 + rng.below(3); ++i)
            a.push_back(random_coloring(rng, d));
        auto g = random_elem(rng, is_xor, d);
        auto b = *act(g, a);
        rng.shuffle(b);
        search_kind kind = is_xor ? search_kind{xor_kind{d}} : search_kind{total_kind{d}};
        auto w = equiv_families(a, b, kind);
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(sorted(*act(*w, a)), sorted(b));
    }
}

TEST(PairColoring, Examples)
{
    auto same = pair_coloring(2, "01", "01");
    EXPECT_EQ(same, coloring({{"", 2}, {"0", 2}, {"01", 2}}));
    auto c = pair_coloring(1, "00", "10");
    EXPECT_EQ(c, coloring({{"", 1}, {"0", 1}, {"1", 1}, {"00", 1}, {"10", 1}}));
    EXPECT_EQ(pair_coloring(3, "011", "110"), pair_coloring(3, "110", "011"));
    EXPECT_THROW(pair_coloring(1, "0", "01"), input_error);
    EXPECT_THROW(pair_coloring(4, "0", "1"), input_error);
    EXPECT_EQ(pair_code(0, 0), 1u);
    EXPECT_EQ(pair_code(3, 2), 40u);
}

TEST(Scheme, BlocksAndRepresentatives)
{
    block_scheme s(3);
    EXPECT_EQ(s.block_of("1"), 0u);
    EXPECT_EQ(s.block_of("0100"), 1u);
    EXPECT_EQ(s.block_of("0000"), 0u);
    EXPECT_EQ(s.block_of("0001"), 0u);
    EXPECT_EQ(s.representatives(1, 2, 3), (std::vector<std::string>{"010", "110"}));
    EXPECT_THROW(s.representatives(2, 5, 3), limit_exceeded);
    // Density: every string has extensions in every block.
    for (const auto& p : all_strings(3))
        for (std::size_t b = 0; b < 3; ++b) {
            bool found = false;
            for (std::size_t j = 0; j < 4 && !found; ++j)
                found = s.block_of(p + std::string(j, '0') + "1") == b;
            EXPECT_TRUE(found);
        }
}

TEST(GraphCoding, Examples)
{
    auto single = encode_graph_tk(graph_instance(1, {}), 3, 4);
    for (const auto& c : single.materialized)
        EXPECT_EQ(c.value_multiset().count(1), c.value_multiset().size());

    graph_instance edge(2, {{0, 1}}), none(2, {});
    auto de = decode_graph_tk(encode_graph_tk(edge, 2, 4).materialized);
    auto dn = decode_graph_tk(encode_graph_tk(none, 2, 4).materialized);
    EXPECT_EQ(de, edge);
    EXPECT_EQ(dn, none);
    EXPECT_NE(de, dn);

    graph_instance tri(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(decode_graph_tk(encode_graph_tk(tri, 1, 3).materialized), tri);
    EXPECT_EQ(decode_graph_tk(encode_graph_tk(graph_instance(3, {}), 1, 3).materialized), graph_instance(3, {}));

    family cliques{pair_coloring(1, "00", "01"), pair_coloring(1, "10", "11")};
    EXPECT_EQ(decode_graph_tk(cliques), graph_instance(2, {}));
    family broken{pair_coloring(1, "00", "01"), pair_coloring(1, "01", "10")};
    EXPECT_THROW(decode_graph_tk(broken), input_error);
    EXPECT_THROW(encode_graph_tk(tri, 5, 3), limit_exceeded);
}

TEST(GraphCoding, RoundTripUpToIsomorphism)
{
    for (std::size_t v = 1; v <= 4; ++v)
        for (const auto& g : all_graphs(v)) {
            auto back = decode_graph_tk(encode_graph_tk(g, 2, v + 2).materialized);
            EXPECT_TRUE(graph_isomorphism(back, g).has_value());
        }
}

TEST(LazyWitness, IdentityMayBeIdentity)
{
    auto f = lazy_claim_witness({0, 1}, block_scheme(2));
    for (std::string s : {"1", "01", "0011", "101", ""})
        EXPECT_EQ(f.branch(s), block_scheme::canonical(s));
}

TEST(LazyWitness, ThreeCycleValidatesOnSamples)
{
    const std::vector<std::size_t> sigma{1, 2, 0};
    block_scheme scheme(3);
    auto f = lazy_claim_witness(sigma, scheme);
    campaign_rng rng(53);
    std::vector<std::string> samples;
    for (int i = 0; i < 150; ++i)
        samples.push_back(random_bits(rng, 1 + rng.below(10)));
    for (const auto& s : samples)
        EXPECT_EQ(scheme.block_of(f.branch(s)), sigma[scheme.block_of(s)]) << s;
    // Jointly a partial element on all sampled nodes.
    EXPECT_NO_THROW(f.partial_on(samples));
    // Meets are preserved between sampled branches.
    for (const auto& [a, fa] : f.answered())
        for (const auto& [b, fb] : f.answered()) {
            const std::size_t n = std::max({a.size(), b.size(), fa.size(), fb.size()}) + 1;
            auto pad = [&](std::string s) {
                s.resize(n, '0');
                return s;
            };
            auto meet = [&](const std::string& x, const std::string& y) {
                std::size_t k = 0;
                while (k < n && pad(x)[k] == pad(y)[k])
                    ++k;
                return k;
            };
            EXPECT_EQ(meet(a, b), meet(fa, fb));
        }
}

TEST(LazyWitness, ExtendsSeed)
{
    block_scheme scheme(2);
    auto f = lazy_claim_witness({1, 0}, scheme, {{"1", "01"}});
    EXPECT_EQ(f.branch("1"), "01");
    EXPECT_EQ(scheme.block_of(f.branch("11")), 0u);
    EXPECT_THROW(lazy_claim_witness({1, 0}, scheme, {{"1", "1"}}), input_error);
}

TEST(LazyWitness, MapsEncodedFamiliesAlongIsomorphisms)
{
    for (std::size_t v = 2; v <= 3; ++v)
        for (const auto& g : all_graphs(v)) {
            std::vector<std::size_t> sigma(v);
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                auto h = g.relabel(sigma);
                auto enc = encode_graph_tk(g, 2, v + 2);
                auto f = lazy_claim_witness(sigma, enc.symbolic.scheme);
                EXPECT_TRUE(witness_maps_family(f, enc, symbolic_family{h, enc.symbolic.scheme}));
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
}

TEST(LazyWitness, TwoGroupObstruction)
{
    auto enc = encode_graph_tk(graph_instance(3, {}), 1, 3);
    ASSERT_EQ(enc.representatives, (std::vector<std::vector<std::string>>{{"100"}, {"010"}, {"001"}}));
    EXPECT_FALSE(total_realizes(enc.representatives, {1, 2, 0}, 3));
    EXPECT_FALSE(total_realizes(enc.representatives, {2, 0, 1}, 3));
    EXPECT_TRUE(total_realizes(enc.representatives, {0, 1, 2}, 3));
    auto f = lazy_claim_witness({1, 2, 0}, enc.symbolic.scheme);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(enc.symbolic.scheme.block_of(f.branch(enc.representatives[i][0])), (i + 1) % 3);
}

TEST(EncodeSetK, Examples)
{
    auto f = encode_set_k({"000"}, 3, 0);
    ASSERT_EQ(f.size(), 1u);
    for (const auto& [s, v] : f[0].values())
        EXPECT_EQ(v, s.empty() ? 1u : 2u);
    EXPECT_FALSE(equiv_families(encode_set_k({"000"}, 3, 1), encode_set_k({"100"}, 3, 1), xor_kind{3}).has_value());
    auto same = equiv_families(encode_set_k({"010"}, 3, 2), encode_set_k({"010"}, 3, 2), xor_kind{3});
    ASSERT_TRUE(same.has_value());
    EXPECT_EQ(std::get<xor_elem>(*same).bits, "000");
}

TEST(EncodeSetK, InjectiveOnSmallSets)
{
    std::vector<std::set<std::string>> sets{{}};
    for (std::size_t a = 0; a < 8; ++a) {
        sets.push_back({all_strings(3)[7 + a]});
        for (std::size_t b = a + 1; b < 8; ++b)
            sets.push_back({all_strings(3)[7 + a], all_strings(3)[7 + b]});
    }
    for (const auto& x : sets)
        for (const auto& y : sets)
            EXPECT_EQ(equiv_families(encode_set_k(x, 3, 1), encode_set_k(y, 3, 1), xor_kind{3}).has_value(), x == y);
}

TEST(Rigidity, Examples)
{
    EXPECT_FALSE(find_rigidity_counterexample(xor_kind{3}, 1).has_value());
    EXPECT_FALSE(find_rigidity_counterexample(xor_kind{1}, 2).has_value());
    auto w = find_rigidity_counterexample(total_kind{2}, 1);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->a, std::vector<std::string>{"00"});
    EXPECT_EQ(w->b, std::vector<std::string>{"10"});
    EXPECT_EQ(w->c, std::vector<std::string>{"11"});
    EXPECT_THROW(find_rigidity_counterexample(total_kind{5}, 1), limit_exceeded);
}

TEST(Rigidity, AgreesWithNaiveSearch)
{
    for (std::size_t d = 1; d <= 2; ++d)
        for (std::size_t len = 1; len <= 2; ++len) {
            EXPECT_EQ(find_rigidity_counterexample(xor_kind{d}, len).has_value(), naive_rigidity_exists(true, d, len));
            EXPECT_EQ(find_rigidity_counterexample(total_kind{d}, len).has_value(),
                      naive_rigidity_exists(false, d, len));
        }
    EXPECT_FALSE(naive_rigidity_exists(true, 3, 1));
}
