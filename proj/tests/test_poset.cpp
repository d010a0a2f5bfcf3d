#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace monoeq;

namespace {

std::set<std::vector<std::string>> named_sets(const Poset& p, const std::vector<ElementSet>& sets) {
    std::set<std::vector<std::string>> out;
    for (ElementSet s : sets) out.insert(p.names_of(s));
    return out;
}

std::vector<Poset> small_posets(int max_n) {
    std::vector<Poset> out;
    for (int n = 1; n <= max_n; ++n)
        for (auto& p : enumerate_posets(n)) out.push_back(std::move(p));
    return out;
}

}  // namespace

TEST(Poset, DiamondFromCovers) {
    Poset d = shapes::diamond();
    EXPECT_TRUE(d.leq(d.index("x"), d.index("w")));
    EXPECT_FALSE(d.covers(d.index("x"), d.index("w")));
    EXPECT_FALSE(d.comparable(d.index("y"), d.index("z")));
    EXPECT_EQ(d.cover_pairs().size(), 4u);
}

TEST(Poset, RedundantCoversDropped) {
    Poset p = Poset::from_cover_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
    EXPECT_EQ(p, Poset::from_cover_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    EXPECT_EQ(p.cover_pairs().size(), 2u);
}

TEST(Poset, Singleton) {
    Poset p = Poset::from_cover_relations({"a"}, {});
    EXPECT_EQ(p.size(), 1u);
    EXPECT_TRUE(p.leq(0, 0));
}

TEST(Poset, ConstructionErrors) {
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Internal;
    };
    EXPECT_EQ(code([] { Poset::from_cover_relations({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), Errc::CycleInRelation);
    EXPECT_EQ(code([] { Poset::from_cover_relations({"a", "a"}, {}); }), Errc::DuplicateElement);
    EXPECT_EQ(code([] { Poset::from_cover_relations({"a"}, {{"a", "q"}}); }), Errc::UnknownElement);
}

TEST(Poset, CoversAreTransitiveReduction) {
    for (const auto& p : small_posets(5)) {
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y = 0; y < p.size(); ++y)
                EXPECT_EQ(p.covers(static_cast<int>(x), static_cast<int>(y)),
                          oracle::covers(p, static_cast<int>(x), static_cast<int>(y)));
        std::vector<std::pair<std::string, std::string>> cov;
        for (auto [a, b] : p.cover_pairs()) cov.emplace_back(p.name(a), p.name(b));
        EXPECT_EQ(Poset::from_cover_relations(p.names(), cov), p);
    }
}

TEST(UpSets, DiamondHasSix) {
    Poset d = shapes::diamond();
    std::set<std::vector<std::string>> expect{{}, {"w"}, {"w", "y"}, {"w", "z"}, {"w", "y", "z"}, {"w", "x", "y", "z"}};
    EXPECT_EQ(named_sets(d, up_sets(d)), expect);
}

TEST(UpSets, BowtieHasSeven) { EXPECT_EQ(up_sets(shapes::bowtie()).size(), 7u); }

TEST(UpSets, SingletonHasTwo) { EXPECT_EQ(up_sets(shapes::chain(1)).size(), 2u); }

TEST(UpSets, AgreeWithSubsetFilter) {
    for (const auto& p : small_posets(6)) {
        auto got = up_sets(p);
        auto want = oracle::up_sets(p);
        EXPECT_EQ(std::set<ElementSet>(got.begin(), got.end()), std::set<ElementSet>(want.begin(), want.end()));
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), set_order_less));
        for (ElementSet u : got) EXPECT_TRUE(p.is_down_set(p.all() & ~u));
    }
}

TEST(UpSets, DualGivesComplements) {
    for (const auto& p : small_posets(5)) {
        std::set<ElementSet> comp;
        for (ElementSet u : up_sets(p)) comp.insert(p.all() & ~u);
        auto d = up_sets(dual(p));
        EXPECT_EQ(std::set<ElementSet>(d.begin(), d.end()), comp);
    }
}

TEST(UpSets, SizeCap) {
    EXPECT_THROW(up_sets(shapes::antichain(23)), Error);
}

TEST(Generated, DownSets) {
    Poset d = shapes::diamond();
    EXPECT_EQ(down_set_generated(d, d.set_of({"w"})), d.all());
    EXPECT_EQ(d.names_of(down_set_generated(d, d.set_of({"y"}))), (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(down_set_generated(d, 0), 0u);
    EXPECT_THROW(d.set_of({"nope"}), Error);
}

TEST(Dual, Basics) {
    Poset c = shapes::chain(2);
    Poset dc = dual(c);
    EXPECT_TRUE(dc.less(dc.index("c1"), dc.index("c0")));
    EXPECT_EQ(dual(dual(shapes::y_poset())), shapes::y_poset());
    EXPECT_TRUE(oracle::isomorphic(dual(shapes::diamond()), shapes::diamond()));
    EXPECT_FALSE(oracle::isomorphic(dual(shapes::y_poset()), shapes::y_poset()));
}

TEST(DisjointUnion, Components) {
    Poset u = disjoint_union(shapes::chain(1, "a"), shapes::chain(1, "b"));
    EXPECT_EQ(u.size(), 2u);
    EXPECT_FALSE(u.comparable(0, 1));
    Poset v = disjoint_union(shapes::chain(2, "a"), shapes::chain(3, "b"));
    EXPECT_EQ(v.size(), 5u);
    EXPECT_EQ(height(v), 3);
    auto comps = components(v);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_TRUE(oracle::isomorphic(comps[0], shapes::chain(2)));
    EXPECT_TRUE(oracle::isomorphic(comps[1], shapes::chain(3)));
    EXPECT_THROW(disjoint_union(shapes::chain(2), shapes::chain(2)), Error);
    Poset w = disjoint_union(shapes::chain(2), shapes::chain(2), "l.", "r.");
    EXPECT_EQ(w.size(), 4u);
}

TEST(Components, Simple) {
    EXPECT_EQ(components(shapes::chain(1)).size(), 1u);
    EXPECT_EQ(components(shapes::bowtie()).size(), 1u);
    EXPECT_EQ(components(shapes::antichain(2)).size(), 2u);
}

TEST(Induced, Restriction) {
    Poset d = shapes::diamond();
    Poset xw = induced_subposet(d, std::vector<std::string>{"x", "w"});
    EXPECT_EQ(xw, Poset::from_cover_relations({"x", "w"}, {{"x", "w"}}));
    EXPECT_EQ(induced_subposet(d, d.all()), d);
    EXPECT_THROW(induced_subposet(d, std::vector<std::string>{"x", "v"}), Error);
}

TEST(Height, Values) {
    EXPECT_EQ(height(shapes::antichain(3)), 1);
    EXPECT_EQ(height(shapes::diamond()), 3);
    EXPECT_EQ(height(shapes::crown(4)), 2);
    EXPECT_EQ(height(Poset{}), 0);
}

TEST(Acyclic, WitnessAndOracle) {
    EXPECT_TRUE(is_acyclic(shapes::chain(5)).acyclic);
    Poset d = shapes::diamond();
    auto r = is_acyclic(d);
    ASSERT_FALSE(r.acyclic);
    std::vector<std::string> names;
    for (int i : r.cycle) names.push_back(d.name(i));
    EXPECT_EQ(names, (std::vector<std::string>{"x", "y", "w", "z"}));
    EXPECT_TRUE(is_acyclic(shapes::bowtie_tree()).acyclic);
    for (const auto& p : small_posets(6)) {
        auto a = is_acyclic(p);
        EXPECT_EQ(a.acyclic, oracle::acyclic(p));
        if (!a.acyclic) {
            EXPECT_GE(a.cycle.size(), 4u);
            EXPECT_TRUE(is_cover_cycle(p, a.cycle));
        }
    }
}

TEST(Leaves, Counts) {
    Poset c = shapes::chain(2);
    EXPECT_EQ(set_size(leaves(c)), 2);
    EXPECT_EQ(set_size(leaves(shapes::y_poset())), 3);
    EXPECT_EQ(leaves(shapes::diamond()), 0u);
}

TEST(Pattern, Examples) {
    Poset d = shapes::diamond();
    auto e = find_induced_pattern(d, shapes::diamond());
    ASSERT_TRUE(e);
    EXPECT_EQ(e->image, (std::vector<int>{0, 1, 2, 3}));
    Poset t = shapes::bowtie_tree();
    auto b = find_induced_pattern(t, shapes::bowtie());
    ASSERT_TRUE(b);
    std::set<std::string> img;
    for (int i : b->image) img.insert(t.name(i));
    EXPECT_EQ(img, (std::set<std::string>{"x1", "x2", "z1", "z2"}));
    EXPECT_FALSE(find_induced_pattern(shapes::chain(5), shapes::bowtie()));
}

TEST(Pattern, DualMatching) {
    Poset dy = dual(shapes::y_poset());
    EXPECT_FALSE(find_induced_pattern(dy, shapes::y_poset()));
    auto e = find_induced_pattern(dy, shapes::y_poset(), true);
    ASSERT_TRUE(e);
    EXPECT_TRUE(e->dual);
}

TEST(Pattern, AgreesWithInjectiveMaps) {
    std::vector<Poset> patterns{shapes::diamond(), shapes::bowtie(), shapes::y_poset(), shapes::w_poset(),
                                shapes::chain(3), shapes::crown(3)};
    for (const auto& p : small_posets(6))
        for (const auto& pat : patterns) {
            auto e = find_induced_pattern(p, pat);
            EXPECT_EQ(e.has_value(), oracle::embeds(p, pat));
            if (e)
                for (std::size_t i = 0; i < pat.size(); ++i)
                    for (std::size_t j = 0; j < pat.size(); ++j)
                        EXPECT_EQ(pat.leq(static_cast<int>(i), static_cast<int>(j)), p.leq(e->image[i], e->image[j]));
        }
}

TEST(Enumerate, KnownCounts) {
    // Unlabelled posets and connected unlabelled posets on n points.
    const std::vector<std::size_t> all{1, 1, 2, 5, 16, 63, 318};
    const std::vector<std::size_t> conn{1, 1, 1, 3, 10, 44, 238};
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(enumerate_posets(n).size(), all[static_cast<std::size_t>(n)]) << n;
        EXPECT_EQ(enumerate_connected_posets(n).size(), conn[static_cast<std::size_t>(n)]) << n;
    }
}

TEST(Enumerate, PairwiseNonIsomorphic) {
    auto ps = enumerate_posets(4);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_FALSE(oracle::isomorphic(ps[i], ps[j]));
}
