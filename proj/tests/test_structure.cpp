#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace monoeq;

namespace {

std::vector<Poset> connected(int max_n) {
    std::vector<Poset> out;
    for (int n = 1; n <= max_n; ++n)
        for (auto& p : enumerate_connected_posets(n)) out.push_back(std::move(p));
    return out;
}

// Height of a cover cycle under its own order: longest monotone run plus one.
int own_height(const Poset& p, const std::vector<int>& c) {
    const std::size_t n = c.size();
    int best = 1;
    for (std::size_t s = 0; s < n; ++s)
        for (int dir : {1, -1}) {
            int len = 1;
            for (std::size_t k = 0; k < n; ++k) {
                int a = c[(s + k) % n], b = c[(s + k + 1) % n];
                if (dir == 1 ? p.less(a, b) : p.less(b, a))
                    ++len;
                else
                    break;
            }
            best = std::max(best, std::min(len, static_cast<int>(n)));
        }
    return best;
}

// Every simple cover cycle (length >= 4 automatically in a poset).
std::vector<std::vector<int>> all_cover_cycles(const Poset& p) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(p.size());
    auto adj = [&](int a, int b) { return oracle::covers(p, a, b) || oracle::covers(p, b, a); };
    std::vector<int> path;
    std::function<void(int)> rec = [&](int v) {
        for (int w = path.front() + 1; w < n; ++w) {
            if (!adj(v, w) || std::find(path.begin(), path.end(), w) != path.end()) continue;
            path.push_back(w);
            rec(w);
            path.pop_back();
        }
        if (path.size() >= 3 && adj(v, path.front()) && path[1] < path.back()) out.push_back(path);
    };
    for (int s = 0; s < n; ++s) {
        path = {s};
        rec(s);
    }
    return out;
}

std::vector<std::string> names(const Poset& p, const std::vector<int>& v) {
    std::vector<std::string> out;
    for (int i : v) out.push_back(p.name(i));
    return out;
}

// Diamond with its left edge subdivided: x < m < y < w, x < z < w.
Poset subdivided_diamond_poset() {
    return Poset::from_cover_relations({"x", "m", "y", "z", "w"}, {{"x", "m"}, {"m", "y"}, {"y", "w"}, {"x", "z"}, {"z", "w"}});
}

}  // namespace

TEST(InducedPath, Chain) {
    Poset c = Poset::from_cover_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    auto w = induced_path(c, c.index("a"), c.index("c"));
    EXPECT_EQ(names(c, w.vertices), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(InducedPath, DiamondSides) {
    Poset d = shapes::diamond();
    auto w = induced_path(d, d.index("y"), d.index("z"));
    ASSERT_EQ(w.vertices.size(), 3u);
    EXPECT_TRUE(oracle::induced_path(d, w.vertices));
}

TEST(InducedPath, AllPairsSmallPosets) {
    for (const auto& p : connected(6))
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y = 0; y < p.size(); ++y) {
                auto w = induced_path(p, static_cast<int>(x), static_cast<int>(y));
                ASSERT_FALSE(w.vertices.empty());
                EXPECT_EQ(w.vertices.front(), static_cast<int>(x));
                EXPECT_EQ(w.vertices.back(), static_cast<int>(y));
                EXPECT_TRUE(oracle::induced_path(p, w.vertices));
            }
}

TEST(InducedPath, Disconnected) {
    Poset a = shapes::antichain(2);
    EXPECT_THROW(induced_path(a, 0, 1), Error);
}

TEST(InducedCycle, DiamondIsAlreadyInduced) {
    Poset d = shapes::diamond();
    std::vector<int> seed{d.index("x"), d.index("y"), d.index("w"), d.index("z")};
    auto c = induced_cycle(d, seed);
    EXPECT_EQ(std::set<int>(c.begin(), c.end()), std::set<int>(seed.begin(), seed.end()));
    EXPECT_EQ(c.front(), seed.front());
    EXPECT_EQ(c.back(), seed.back());
}

TEST(InducedCycle, FromEverySeed) {
    for (const auto& p : connected(6))
        for (const auto& seed : all_cover_cycles(p)) {
            auto c = induced_cycle(p, seed);
            EXPECT_TRUE(oracle::induced_cycle(p, c));
            EXPECT_EQ(c.front(), seed.front());
            EXPECT_EQ(c.back(), seed.back());
        }
}

TEST(InducedCycle, SubdividedCrown) {
    // 3-crown with x0 < s < y0 replacing the cover x0 < y0.
    Poset p = Poset::from_cover_relations(
        {"x0", "x1", "x2", "y0", "y1", "y2", "s"},
        {{"x0", "s"}, {"s", "y0"}, {"x0", "y2"}, {"x1", "y0"}, {"x1", "y1"}, {"x2", "y1"}, {"x2", "y2"}});
    auto seed = is_acyclic(p).cycle;
    auto c = induced_cycle(p, seed);
    EXPECT_TRUE(oracle::induced_cycle(p, c));
}

TEST(InducedCycle, InvalidSeed) {
    Poset d = shapes::diamond();
    try {
        induced_cycle(d, {d.index("x"), d.index("w"), d.index("y")});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidSeed);
    }
}

TEST(SubdividedDiamond, Examples) {
    Poset d = shapes::diamond();
    auto c = subdivided_diamond(d, d.index("x"), d.index("w"));
    EXPECT_EQ(c.size(), 4u);
    EXPECT_TRUE(oracle::induced_cycle(d, c));
    Poset ch = shapes::chain(4);
    try {
        subdivided_diamond(ch, 0, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoTwoUpwardPaths);
    }
    Poset s = subdivided_diamond_poset();
    auto c5 = subdivided_diamond(s, s.index("x"), s.index("w"));
    EXPECT_EQ(c5.size(), 5u);
    EXPECT_TRUE(oracle::induced_cycle(s, c5));
}

TEST(CycleHeight3, Examples) {
    Poset d = shapes::diamond();
    auto c = induced_cycle_height3(d);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(cycle_height(d, c), 3);
    EXPECT_TRUE(induced_cycle_height3(shapes::crown(3)).empty());
    EXPECT_TRUE(induced_cycle_height3(shapes::crown(4)).empty());
    auto t = induced_cycle_height3(shapes::tall_cycle());
    EXPECT_GE(cycle_height(shapes::tall_cycle(), t), 3);
}

TEST(CycleHeight3, MatchesExhaustiveSearch) {
    for (const auto& p : connected(6)) {
        bool tall = false;
        for (const auto& c : all_cover_cycles(p)) tall = tall || own_height(p, c) >= 3;
        auto c = induced_cycle_height3(p);
        EXPECT_EQ(!c.empty(), tall);
        if (!c.empty()) {
            EXPECT_TRUE(oracle::induced_cycle(p, c));
            EXPECT_GE(own_height(p, c), 3);
            EXPECT_EQ(cycle_height(p, c), own_height(p, c));
        }
    }
}

TEST(Classify, Examples) {
    auto d = classify(shapes::diamond());
    EXPECT_EQ(d.cls, TargetClass::B);
    EXPECT_FALSE(d.cycle.empty());
    auto t = classify(shapes::bowtie_tree());
    EXPECT_EQ(t.cls, TargetClass::B);
    EXPECT_TRUE(t.cycle.empty());
    EXPECT_EQ(t.pattern, "bowtie");
    EXPECT_EQ(classify(shapes::y_tree()).cls, TargetClass::Y);
    EXPECT_EQ(classify(shapes::y_poset()).cls, TargetClass::Y);
    EXPECT_EQ(classify(shapes::w_poset()).cls, TargetClass::W);
    EXPECT_EQ(classify(dual(shapes::w_poset())).cls, TargetClass::W);
    EXPECT_EQ(classify(shapes::chain(5)).cls, TargetClass::Z);
    EXPECT_EQ(classify(shapes::zigzag(6)).cls, TargetClass::Z);
    EXPECT_THROW(classify(shapes::antichain(2)), Error);
}

TEST(Classify, DefinitionByBruteForce) {
    for (const auto& p : connected(6)) {
        TargetClass want = TargetClass::Z;
        if (!oracle::acyclic(p) || oracle::embeds(p, shapes::bowtie()))
            want = TargetClass::B;
        else if (oracle::embeds(p, shapes::y_poset()) || oracle::embeds(p, dual(shapes::y_poset())))
            want = TargetClass::Y;
        else if (oracle::embeds(p, shapes::w_poset()) || oracle::embeds(p, dual(shapes::w_poset())))
            want = TargetClass::W;
        EXPECT_EQ(classify(p).cls, want);
        EXPECT_EQ(classify(dual(p)).cls, want);
    }
}

TEST(RootedTree, SectionExample) {
    Poset p = shapes::y_tree();
    RootedTree t = rooted_tree(p, p.index("tau"));
    int r = p.index("r");
    EXPECT_EQ(p.names_of(t.section[static_cast<std::size_t>(r)]),
              (std::vector<std::string>{"p", "r", "t", "x", "y", "z"}));
    EXPECT_EQ(t.kind[static_cast<std::size_t>(r)], SectionKind::UpSet);
    EXPECT_TRUE(p.is_up_set(t.section[static_cast<std::size_t>(r)]));
}

TEST(RootedTree, ChainAtTop) {
    Poset c = shapes::chain(2);
    RootedTree t = rooted_tree(c, 1);
    EXPECT_EQ(t.section[0], bit(0));
    EXPECT_EQ(t.kind[0], SectionKind::DownSet);
}

TEST(RootedTree, ZigzagSectionsArePrefixes) {
    Poset z = shapes::zigzag(5);
    RootedTree t = rooted_tree(z, z.index("z4"));
    for (int i = 0; i < 5; ++i) EXPECT_EQ(t.section[static_cast<std::size_t>(i)], full_set(static_cast<std::size_t>(i + 1)));
}

TEST(RootedTree, SectionsAreUpOrDownSets) {
    for (const auto& p : connected(6)) {
        if (!oracle::acyclic(p)) continue;
        for (int root : members(leaves(p))) {
            RootedTree t = rooted_tree(p, root);
            for (std::size_t x = 0; x < p.size(); ++x) {
                if (static_cast<int>(x) == root) continue;
                ElementSet s = t.section[x];
                int par = t.parent[x];
                bool down = p.covers(static_cast<int>(x), par);
                EXPECT_EQ(t.kind[x], down ? SectionKind::DownSet : SectionKind::UpSet);
                EXPECT_TRUE(down ? p.is_down_set(s) : p.is_up_set(s));
            }
        }
    }
}

TEST(RootedTree, Errors) {
    EXPECT_THROW(rooted_tree(shapes::diamond(), 0), Error);
    Poset y = shapes::y_poset();
    EXPECT_THROW(rooted_tree(y, y.index("z")), Error);
}

TEST(Enlargeable, Obstructions) {
    auto kind = [](const Poset& p) { return check_enlargeable(p)->kind; };
    EXPECT_EQ(kind(shapes::diamond()), ObstructionKind::Diamond);
    EXPECT_FALSE(check_enlargeable(shapes::bowtie()));
    EXPECT_FALSE(check_enlargeable(shapes::bipartite(3, 3)));
    EXPECT_EQ(kind(shapes::double_bowtie()), ObstructionKind::DoubleBowtie);
    EXPECT_EQ(kind(shapes::crown(3)), ObstructionKind::Crown);
    EXPECT_EQ(check_enlargeable(shapes::crown(4))->k, 4);
    EXPECT_EQ(kind(shapes::tall_cycle()), ObstructionKind::TallCycle);
    EXPECT_THROW(check_enlargeable(shapes::antichain(2)), Error);
}

TEST(Enlargeable, PatternCharacterisation) {
    // Obstruction iff an induced diamond, k-crown (k >= 3), double-bowtie, or a tall induced cycle.
    for (const auto& p : connected(6)) {
        bool bad = oracle::embeds(p, shapes::diamond()) || oracle::embeds(p, shapes::crown(3)) ||
                   oracle::embeds(p, shapes::double_bowtie());
        for (const auto& c : all_cover_cycles(p))
            if (oracle::induced_cycle(p, c) && own_height(p, c) >= 3) bad = true;
        EXPECT_EQ(check_enlargeable(p).has_value(), bad);
    }
}

TEST(Weld, Chains) {
    Poset a = Poset::from_cover_relations({"a", "c"}, {{"a", "c"}});
    Poset b = Poset::from_cover_relations({"c", "b"}, {{"c", "b"}});
    Poset w = weld(a, b, "c");
    EXPECT_EQ(w, Poset::from_cover_relations({"a", "b", "c"}, {{"a", "c"}, {"c", "b"}}));
    Poset b2 = Poset::from_cover_relations({"b", "c"}, {{"b", "c"}});
    Poset v = weld(a, b2, "c");
    EXPECT_EQ(v.cover_pairs().size(), 2u);
    EXPECT_FALSE(v.comparable(v.index("a"), v.index("b")));
    EXPECT_THROW(weld(a, a, "c"), Error);
}

TEST(Weld, TreesStayAcyclicAndInduced) {
    Poset t1 = shapes::y_tree();
    Poset t2 = Poset::from_cover_relations({"q", "u1", "u2", "u3"}, {{"u1", "q"}, {"q", "u2"}, {"u3", "u2"}});
    Poset w = weld(t1, t2, "q");
    EXPECT_TRUE(oracle::acyclic(w));
    EXPECT_EQ(induced_subposet(w, t1.names()), t1);
    EXPECT_EQ(induced_subposet(w, t2.names()), t2);
}

TEST(Enlarge, Bowtie) {
    Poset b = shapes::bowtie();
    Poset e = enlarge_to_acyclic(b);
    ASSERT_EQ(e.size(), 5u);
    EXPECT_TRUE(oracle::acyclic(e));
    EXPECT_EQ(induced_subposet(e, b.names()), b);
    int c = e.index("c");
    for (const auto& lo : {"a0", "a1"}) EXPECT_TRUE(e.covers(e.index(lo), c));
    for (const auto& hi : {"b0", "b1"}) EXPECT_TRUE(e.covers(c, e.index(hi)));
}

TEST(Enlarge, AcyclicIsFixed) {
    EXPECT_EQ(enlarge_to_acyclic(shapes::y_tree()), shapes::y_tree());
    EXPECT_EQ(enlarge_to_acyclic(shapes::chain(3)), shapes::chain(3));
}

TEST(Enlarge, TwoBowtiesSharingAMinimalElement) {
    // {a0 a1 b0 b1} and {a1 a2 b2 b3} are bowties meeting in a1.
    Poset p = Poset::from_cover_relations({"a0", "a1", "a2", "b0", "b1", "b2", "b3"},
                                          {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"},
                                           {"a1", "b2"}, {"a1", "b3"}, {"a2", "b2"}, {"a2", "b3"}});
    ASSERT_FALSE(check_enlargeable(p));
    Poset e = enlarge_to_acyclic(p);
    EXPECT_EQ(e.size(), 9u);
    EXPECT_TRUE(oracle::acyclic(e));
    EXPECT_EQ(induced_subposet(e, p.names()), p);
}

TEST(Enlarge, NotEnlargeableCarriesObstruction) {
    try {
        enlarge_to_acyclic(shapes::diamond());
        FAIL();
    } catch (const NotEnlargeableError& e) {
        EXPECT_EQ(e.code(), Errc::NotEnlargeable);
    }
}

TEST(Enlarge, EquivalenceOnSmallPosets) {
    for (const auto& p : connected(6)) {
        auto obs = check_enlargeable(p);
        if (obs) {
            EXPECT_THROW(enlarge_to_acyclic(p), NotEnlargeableError);
            continue;
        }
        Poset e = enlarge_to_acyclic(p);
        EXPECT_TRUE(oracle::acyclic(e));
        EXPECT_EQ(induced_subposet(e, p.names()), p);
    }
}
