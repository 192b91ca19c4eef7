#include <gtest/gtest.h>

#include <bit>
#include <functional>

#include "scott/core/sentence.hpp"
#include "scott/ref/data.hpp"
#include "scott/ref/encoders.hpp"
#include "scott/ref/materialize.hpp"
#include "support.hpp"

using namespace scott;
using namespace scott::ref;

namespace {

presentation bin_colors(std::size_t d, std::vector<std::uint64_t> cs)
{
    std::vector<ext_nat> colors(cs.begin(), cs.end());
    return presentation::bin(d, std::move(colors));
}

std::vector<std::string> children_of(const std::set<std::string>& t, const std::string& s)
{
    std::vector<std::string> out;
    for (const auto& x : t)
        if (x.size() == s.size() + 1 && x.compare(0, s.size(), s) == 0)
            out.push_back(x);
    return out;
}

// Backtracking matcher for unordered rooted trees.
bool trees_isomorphic(const std::set<std::string>& a, const std::string& x, const std::set<std::string>& b,
                      const std::string& y)
{
    auto ca = children_of(a, x), cb = children_of(b, y);
    if (ca.size() != cb.size())
        return false;
    std::vector<bool> used(cb.size(), false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == ca.size())
            return true;
        for (std::size_t j = 0; j < cb.size(); ++j)
            if (!used[j] && trees_isomorphic(a, ca[i], b, cb[j])) {
                used[j] = true;
                if (go(i + 1))
                    return true;
                used[j] = false;
            }
        return false;
    };
    return go(0);
}

std::vector<std::set<std::string>> subsets_of_binary(std::size_t d, std::size_t max_card)
{
    std::vector<std::set<std::string>> out;
    const std::size_t n = std::size_t{1} << d;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) > max_card)
            continue;
        std::set<std::string> s;
        for (std::size_t r = 0; r < n; ++r)
            if ((m >> r) & 1u)
                s.insert(binary_string(r, d));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

TEST(Presentation, Validation)
{
    EXPECT_THROW(bin_colors(1, {1}), input_error);
    EXPECT_THROW(bin_colors(1, {1, 0}), input_error);
    EXPECT_THROW(presentation(variant::bin, 3, 1, {1, 1, 1}), input_error);
    EXPECT_THROW(presentation::inf(11, 1, std::vector<ext_nat>(11, 1)), input_error);
    auto p = presentation::inf(3, 2, std::vector<ext_nat>(9, 1));
    EXPECT_EQ(p.address(5), "12");
    EXPECT_EQ(p.index_of("21"), 7u);
    EXPECT_THROW(p.index_of("3"), input_error);
}

TEST(Data, DepthOneExamples)
{
    auto same = compute_data(bin_colors(1, {1, 1}));
    ASSERT_EQ(same.level(0).size(), 1u);
    EXPECT_EQ(same.level(0)[0], (ref_data::children{{0, 2}}));
    EXPECT_EQ(same.mult({0}), 2u);

    auto mixed = compute_data(bin_colors(1, {1, 2}));
    EXPECT_EQ(mixed.level(0)[0], (ref_data::children{{0, 1}, {1, 1}}));
    EXPECT_EQ(mixed.mult({0}), 1u);
    EXPECT_EQ(mixed.mult({1}), 1u);
    EXPECT_EQ(mixed.spectrum({1}), (std::set<ext_nat>{2}));
}

TEST(Data, SwappedSubtreesAgree)
{
    auto p = bin_colors(2, {1, 2, 2, 1});
    auto q = bin_colors(2, {2, 1, 1, 2});
    EXPECT_TRUE(fixtures::bin_automorphic(p, q));
    EXPECT_EQ(compute_data(p), compute_data(q));
    EXPECT_TRUE(presentations_equiv(p, q));
    EXPECT_TRUE(presentations_equiv(p, p));
}

TEST(Data, AccessorsDescribeTheTypeTree)
{
    auto d = compute_data(bin_colors(2, {1, 1, 1, 3}));
    auto lvl1 = d.level_types(1);
    ASSERT_EQ(lvl1.size(), 2u);
    EXPECT_EQ(d.mult(lvl1[0]), 1u);
    auto seqs = d.seqs();
    // {1,1} contributes one sequence with multiplicity 2; {1,3} two.
    ASSERT_EQ(seqs.size(), 3u);
    std::multiset<ext_nat> colors;
    for (const auto& s : seqs) {
        auto sp = d.spectrum(s);
        ASSERT_EQ(sp.size(), 1u);
        colors.insert(*sp.begin());
    }
    EXPECT_EQ(colors, (std::multiset<ext_nat>{1, 1, 3}));
    for (const auto& s : seqs)
        EXPECT_TRUE(d.mult(s) == 1 || d.mult(s) == 2);
}

TEST(Data, ShapeMismatchIsAnError)
{
    EXPECT_THROW(presentations_equiv(bin_colors(1, {1, 1}), bin_colors(2, {1, 1, 1, 1})), input_error);
}

TEST(Data, InvariantUnderRandomAutomorphisms)
{
    campaign_rng rng(21);
    for (int rep = 0; rep < 200; ++rep) {
        presentation p = rng.coin() ? fixtures::random_bin(rng, 1 + rng.below(4), 3) : [&] {
            const std::size_t w = 2 + rng.below(3), d = 1 + rng.below(3);
            std::vector<ext_nat> cs(presentation::leaf_count(w, d));
            for (auto& c : cs)
                c = ext_nat(1 + rng.below(2));
            return presentation::inf(w, d, cs);
        }();
        EXPECT_EQ(compute_data(p), compute_data(fixtures::random_automorphic_image(p, rng)));
    }
}

TEST(Data, AgreesWithAutomorphismSearch)
{
    campaign_rng rng(23);
    for (int rep = 0; rep < 150; ++rep) {
        const std::size_t d = 1 + rng.below(3);
        auto p = fixtures::random_bin(rng, d, 2);
        auto q = rng.coin() ? fixtures::random_automorphic_image(p, rng) : fixtures::random_bin(rng, d, 2);
        EXPECT_EQ(presentations_equiv(p, q), fixtures::bin_automorphic(p, q));
    }
}

TEST(Unpack, Examples)
{
    ref_data d(variant::bin, 2, 1, {{{{0, 2}}}}, {ext_nat(1)});
    EXPECT_EQ(unpack_data(d), bin_colors(1, {1, 1}));
    ref_data bad(variant::bin, 2, 1, {{{{0, 3}}}}, {ext_nat(1)});
    EXPECT_THROW(unpack_data(bad), input_error);
    ref_data unsorted(variant::bin, 2, 1, {{{{1, 1}, {0, 1}}}}, {ext_nat(1), ext_nat(2)});
    EXPECT_THROW(unpack_data(unsorted), input_error);
}

TEST(Unpack, RoundTrips)
{
    campaign_rng rng(29);
    for (int rep = 0; rep < 200; ++rep) {
        auto p = fixtures::random_bin(rng, 1 + rng.below(4), 4);
        auto data = compute_data(p);
        auto back = unpack_data(data);
        EXPECT_EQ(compute_data(back), data);
        EXPECT_TRUE(presentations_equiv(back, p));
        EXPECT_EQ(unpack_data(compute_data(back)), back);
    }
}

TEST(Materialize, CssAgreesWithDataOnSmallColors)
{
    std::vector<presentation> all;
    for (std::uint64_t m = 0; m < 16; ++m)
        all.push_back(bin_colors(2, {1 + (m & 1), 1 + ((m >> 1) & 1), 1 + ((m >> 2) & 1), 1 + ((m >> 3) & 1)}));
    std::vector<core::scott_sentence_value> css;
    for (const auto& p : all)
        css.push_back(core::scott_sentence(materialize(p)));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            EXPECT_EQ(css[i] == css[j], presentations_equiv(all[i], all[j])) << i << " vs " << j;
}

TEST(EncodeSet, Examples)
{
    auto empty = encode_set_refbin({}, 2);
    EXPECT_EQ(empty.depth(), 3u);
    for (const auto& c : empty.colors())
        EXPECT_TRUE(c.is_finite());

    auto one = encode_set_refbin({"11"}, 2);
    for (std::size_t i = 0; i < one.size(); ++i)
        EXPECT_EQ(one.color(i).is_omega(), one.address(i) == "111");

    auto a = encode_set_refbin({"00"}, 2), b = encode_set_refbin({"01"}, 2);
    EXPECT_FALSE(fixtures::bin_automorphic(a, b));
    EXPECT_NE(compute_data(a), compute_data(b));
    EXPECT_THROW(encode_set_refbin({"0"}, 2), input_error);
}

TEST(EncodeSet, DecodeExamples)
{
    EXPECT_EQ(decode_set_refbin(encode_set_refbin({}, 2)), std::set<std::string>{});
    EXPECT_EQ(decode_set_refbin(encode_set_refbin({"11"}, 2)), std::set<std::string>{"11"});
    std::set<std::string> s{"000", "010", "100"};
    EXPECT_EQ(decode_set_refbin(encode_set_refbin(s, 3)), s);
}

TEST(EncodeSet, DecodeRejectsMalformed)
{
    EXPECT_THROW(decode_set_refbin(bin_colors(2, {2, 1, 2, 1})), malformed_presentation);
    EXPECT_THROW(decode_set_refbin(bin_colors(2, {1, 1, 2, 1})), malformed_presentation);
    EXPECT_THROW(decode_set_refbin(bin_colors(1, {2, 1})), malformed_presentation);
    EXPECT_THROW(decode_set_refbin(presentation::inf(3, 2, std::vector<ext_nat>(9, 1))), malformed_presentation);
}

TEST(EncodeSet, DecodeIsAutomorphismInvariant)
{
    campaign_rng rng(31);
    for (const auto& s : subsets_of_binary(3, 8)) {
        auto p = encode_set_refbin(s, 3);
        EXPECT_EQ(decode_set_refbin(fixtures::random_automorphic_image(p, rng)), s);
    }
}

TEST(EncodeSet, InjectiveAtDepthThree)
{
    auto sets = subsets_of_binary(3, 3);
    std::vector<ref_data> data;
    for (const auto& s : sets)
        data.push_back(compute_data(encode_set_refbin(s, 3)));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j)
            EXPECT_EQ(data[i] == data[j], i == j);
}

TEST(EncodeSet, InequivalenceMatchesAutomorphismSearch)
{
    auto sets = subsets_of_binary(2, 4);
    for (const auto& s : sets)
        for (const auto& t : sets) {
            auto p = encode_set_refbin(s, 2), q = encode_set_refbin(t, 2);
            EXPECT_EQ(fixtures::bin_automorphic(p, q), s == t);
        }
}

TEST(EncodeTree, SingleRootColors)
{
    auto p = encode_tree_refinf(labeled_tree({""}), 2, 2);
    // An address leaves S at level k when eta|k is outside S and eta(k) != 0.
    EXPECT_EQ(p.color("00"), ext_nat(1));
    EXPECT_EQ(p.color("01"), ext_nat(2));
    EXPECT_EQ(p.color("10"), ext_nat(1));
    EXPECT_EQ(p.color("11"), ext_nat(2));
}

TEST(EncodeTree, FullTreeIsAllOnes)
{
    std::set<std::string> full;
    for (const auto& t : fixtures::all_trees(2, 2))
        if (t.size() > full.size())
            full = t;
    auto p = encode_tree_refinf(labeled_tree(full), 3, 2);
    for (const auto& c : p.colors())
        EXPECT_EQ(c, ext_nat(1));
}

TEST(EncodeTree, IsomorphicTreesEncodeIdentically)
{
    auto a = encode_tree_refinf(labeled_tree({"", "1", "10"}), 4, 3);
    auto b = encode_tree_refinf(labeled_tree({"", "2", "20"}), 4, 3);
    auto c = encode_tree_refinf(labeled_tree({"", "0", "00"}), 4, 3);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(EncodeTree, Preconditions)
{
    EXPECT_THROW(encode_tree_refinf(labeled_tree({"", "2"}), 3, 2), input_error);
    EXPECT_THROW(encode_tree_refinf(labeled_tree({"", "0", "00"}), 2, 2), input_error);
    EXPECT_THROW(labeled_tree({"0"}), input_error);
    EXPECT_THROW(labeled_tree({"", "01"}), input_error);
}

TEST(TreeInvariant, Examples)
{
    auto root = tree_invariant(encode_tree_refinf(labeled_tree({""}), 2, 2));
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(root->nodes(), std::set<std::string>{""});

    auto chain = tree_invariant(encode_tree_refinf(labeled_tree({"", "0"}), 3, 2));
    ASSERT_TRUE(chain.has_value());
    EXPECT_EQ(chain->nodes(), (std::set<std::string>{"", "0"}));

    EXPECT_FALSE(tree_invariant(presentation::inf(2, 2, std::vector<ext_nat>(4, 2))).has_value());
    EXPECT_THROW(tree_invariant(bin_colors(1, {1, 1})), input_error);
}

TEST(TreeInvariant, InvertsEncodingExhaustively)
{
    for (std::size_t w : {2u, 3u})
        for (const auto& s : fixtures::all_trees(w, 2)) {
            labeled_tree t(s);
            auto back = tree_invariant(encode_tree_refinf(t, 4, w));
            ASSERT_TRUE(back.has_value());
            EXPECT_EQ(*back, t.canonical());
            EXPECT_TRUE(trees_isomorphic(back->nodes(), "", s, ""));
        }
}
