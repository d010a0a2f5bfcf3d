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

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

}  // namespace

TEST(Strassen, IdentityKernel) {
    PosetRef d = share(shapes::diamond());
    Measure p(d, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
    UpwardKernel k = strassen_pair(p, p);
    for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(k.k[x][x], 1);
}

TEST(Strassen, TwoChainUniqueSolution) {
    PosetRef c = share(shapes::chain(2));
    Measure p1(c, {Rational(1, 2), Rational(1, 2)});
    Measure p2(c, {Rational(1, 4), Rational(3, 4)});
    UpwardKernel k = strassen_pair(p1, p2);
    EXPECT_EQ(k.k[0][0], Rational(1, 2));
    EXPECT_EQ(k.k[0][1], Rational(1, 2));
    EXPECT_EQ(k.k[1][1], 1);
    EXPECT_EQ(k.k[1][0], 0);
}

TEST(Strassen, NotDominatedWitness) {
    PosetRef d = share(shapes::diamond());
    try {
        strassen_pair(Measure::point(d, d->index("w")), Measure::point(d, d->index("x")));
        FAIL();
    } catch (const NotDominatedError& e) {
        EXPECT_EQ(d->names_of(e.witness()), std::vector<std::string>{"w"});
    }
}

TEST(Strassen, EquivalenceUpToSix) {
    Rng rng(41);
    for (const auto& p0 : connected(6)) {
        PosetRef p = share(p0);
        for (int i = 0; i < 10; ++i) {
            auto [a, b] = random_measure_pair(p, rng);
            bool dom = oracle::dominated(a, b);
            try {
                UpwardKernel k = strassen_pair(a, b);
                EXPECT_TRUE(dom);
                EXPECT_TRUE(k.is_upward());
                EXPECT_EQ(k.apply(a), b);
            } catch (const NotDominatedError& e) {
                EXPECT_FALSE(dom);
                EXPECT_TRUE(p->is_up_set(e.witness()));
                EXPECT_GT(oracle::mass(a, e.witness()), oracle::mass(b, e.witness()));
            }
        }
    }
}

TEST(MonotoneElements, Counts) {
    PosetRef one = share(shapes::chain(1));
    PosetRef y = share(shapes::y_tree());
    EXPECT_EQ(monotone_elements(one, y).maps.size(), y->size());
    PosetRef c2 = share(shapes::chain(2));
    EXPECT_EQ(monotone_elements(c2, c2).maps.size(), 3u);
    PosetRef d = share(shapes::diamond());
    EXPECT_EQ(monotone_elements(d, d).maps.size(), oracle::monotone_count(*d, *d));
    for (const Poset& a : {shapes::bowtie(), shapes::y_poset(), shapes::chain(3)})
        for (const Poset& s : {shapes::diamond(), shapes::crown(3), shapes::zigzag(4)}) {
            auto m = monotone_elements(share(a), share(s));
            EXPECT_EQ(m.maps.size(), oracle::monotone_count(a, s));
            EXPECT_EQ(m.maps, oracle::monotone_maps(a, s));
        }
}

TEST(MonotoneElements, Cap) {
    PosetRef a = share(shapes::antichain(6));
    PosetRef s = share(shapes::antichain(20));
    EXPECT_EQ(code_of([&] { monotone_elements(a, s); }), Errc::CapExceeded);
    EXPECT_EQ(code_of([&] { monotone_elements(share(shapes::chain(2)), share(shapes::chain(3)), 5); }), Errc::CapExceeded);
}

TEST(Realize, DiamondFixtureInfeasible) {
    MeasureSystem sys = fixture_diamond_diamond().system;
    Realization r = realize(sys);
    ASSERT_TRUE(std::holds_alternative<InfeasibilityCertificate>(r));
    const auto& c = std::get<InfeasibilityCertificate>(r);
    EXPECT_GT(c.lhs, c.sup);
    EXPECT_EQ(c.sup, oracle::certificate_sup(*sys.index, *sys.target, c.f));
}

TEST(Realize, PairwiseMatchesStrassen) {
    Rng rng(8);
    PosetRef a = share(shapes::chain(2));
    for (const Poset& s0 : {shapes::diamond(), shapes::y_tree(), shapes::crown(3)}) {
        PosetRef s = share(s0);
        for (int i = 0; i < 20; ++i) {
            auto [p1, p2] = random_measure_pair(s, rng);
            MeasureSystem sys(a, s, {p1, p2});
            Realization r = realize(sys);
            EXPECT_EQ(std::holds_alternative<Coupling>(r), oracle::dominated(p1, p2));
            if (auto* c = std::get_if<Coupling>(&r)) {
                EXPECT_TRUE(oracle::coupling_ok(*c, sys));
            }
            if (auto* c = std::get_if<InfeasibilityCertificate>(&r)) {
                EXPECT_GT(c->lhs, c->sup);
                EXPECT_EQ(certificate_lhs(sys, c->f), c->lhs);
                EXPECT_EQ(oracle::certificate_sup(*a, *s, c->f), c->sup);
            }
        }
    }
}

TEST(Realize, RandomSystemsBothBranchesValidate) {
    Rng rng(99);
    std::vector<std::pair<Poset, Poset>> pairs{{shapes::diamond(), shapes::diamond()},
                                               {shapes::bowtie(), shapes::diamond()},
                                               {shapes::diamond(), shapes::y_poset()},
                                               {shapes::crown(3), shapes::bowtie()}};
    for (const auto& [a0, s0] : pairs) {
        PosetRef a = share(a0), s = share(s0);
        for (int i = 0; i < 30; ++i) {
            std::vector<Measure> ms;
            for (std::size_t j = 0; j < a->size(); ++j) ms.push_back(random_measure(s, rng, 2, 2));
            MeasureSystem sys(a, s, ms);
            Realization r = realize(sys);
            if (auto* c = std::get_if<Coupling>(&r)) {
                EXPECT_TRUE(oracle::coupling_ok(*c, sys));
            } else {
                const auto& cert = std::get<InfeasibilityCertificate>(r);
                EXPECT_EQ(certificate_lhs(sys, cert.f), cert.lhs);
                EXPECT_EQ(oracle::certificate_sup(*a, *s, cert.f), cert.sup);
                EXPECT_GT(cert.lhs, cert.sup);
            }
        }
    }
}

TEST(Realize, Errors) {
    PosetRef a = share(shapes::antichain(8));
    PosetRef s = share(shapes::antichain(8));
    std::vector<Measure> ms(8, Measure::uniform(s, s->all()));
    EXPECT_EQ(code_of([&] { realize(MeasureSystem(a, s, ms)); }), Errc::CapExceeded);
}

TEST(CertificateValue, IndicatorFamilies) {
    Counterexample bc = fixture_bowtie_crown(2);
    ASSERT_TRUE(bc.indicators);
    auto v = certificate_value(bc.system, indicator_family(bc.system, *bc.indicators));
    EXPECT_EQ(v.lhs, Rational(5, 4));
    EXPECT_EQ(v.sup, 1);
    Counterexample dc = fixture_diamond_crown(3);
    ASSERT_TRUE(dc.indicators);
    auto w = certificate_value(dc.system, indicator_family(dc.system, *dc.indicators));
    EXPECT_EQ(w.lhs, Rational(7, 3));
    EXPECT_EQ(w.sup, 2);
    std::vector<std::vector<Rational>> zero(bc.system.index->size(), std::vector<Rational>(bc.system.target->size(), 0));
    auto z = certificate_value(bc.system, zero);
    EXPECT_EQ(z.lhs, 0);
    EXPECT_EQ(z.sup, 0);
}

TEST(CertificateValue, SupAgreesWithEnumeration) {
    Rng rng(4);
    PosetRef a = share(shapes::diamond()), s = share(shapes::crown(3));
    MeasureSystem sys = random_sm_system(a, s, rng);
    auto delta = monotone_elements(a, s);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::vector<Rational>> f(a->size(), std::vector<Rational>(s->size()));
        for (auto& row : f)
            for (auto& v : row) v = Rational(uniform_int(rng, 11) - 5, 1 + uniform_int(rng, 3));
        auto val = certificate_value(sys, f, delta);
        EXPECT_EQ(val.sup, oracle::certificate_sup(*a, *s, f));
        EXPECT_EQ(certificate_value(sys, f).sup, val.sup);
    }
}

TEST(RealizeAcyclic, TwoChain) {
    PosetRef a = share(shapes::chain(2));
    PosetRef s = share(shapes::chain(2));
    MeasureSystem sys(a, s, {Measure(s, {Rational(1, 2), Rational(1, 2)}), Measure(s, {Rational(1, 4), Rational(3, 4)})});
    Coupling c = realize_acyclic(sys);
    EXPECT_TRUE(oracle::coupling_ok(c, sys));
    EXPECT_EQ(c.points.size(), 3u);
}

TEST(RealizeAcyclic, ChainIntoDiamond) {
    PosetRef a = share(shapes::chain(3));
    PosetRef s = share(shapes::diamond());
    MeasureSystem sys(a, s, {Measure::point(s, s->index("x")), Measure::uniform(s, std::vector<std::string>{"y", "z"}),
                             Measure::point(s, s->index("w"))});
    Coupling c = realize_acyclic(sys);
    EXPECT_TRUE(oracle::coupling_ok(c, sys));
    EXPECT_TRUE(is_realizable(sys));
}

TEST(RealizeAcyclic, RandomAgainstLp) {
    Rng rng(7);
    for (const Poset& a0 : {shapes::y_poset(), shapes::y_tree(), shapes::bowtie_tree(), shapes::zigzag(4)})
        for (const Poset& s0 : {shapes::chain(5), shapes::diamond(), shapes::crown(3)}) {
            PosetRef a = share(a0), s = share(s0);
            for (int i = 0; i < 10; ++i) {
                MeasureSystem sys = random_sm_system(a, s, rng);
                Coupling c = realize_acyclic(sys);
                EXPECT_TRUE(oracle::coupling_ok(c, sys));
                EXPECT_TRUE(is_realizable(sys));
            }
        }
}

TEST(RealizeAcyclic, Errors) {
    PosetRef d = share(shapes::diamond());
    EXPECT_EQ(code_of([&] { realize_acyclic(fixture_diamond_diamond().system); }), Errc::NotAcyclic);
    PosetRef c = share(shapes::chain(2));
    MeasureSystem bad(c, c, {Measure::point(c, 1), Measure::point(c, 0)});
    EXPECT_EQ(code_of([&] { realize_acyclic(bad); }), Errc::NotStochasticallyMonotone);
}

TEST(RealizeClassZ, LinearTarget) {
    Rng rng(12);
    PosetRef a = share(shapes::crown(3));
    PosetRef s = share(shapes::chain(4));
    for (int i = 0; i < 20; ++i) {
        MeasureSystem sys = random_sm_system(a, s, rng);
        Coupling c = realize_class_z(sys);
        EXPECT_TRUE(oracle::coupling_ok(c, sys));
    }
}

TEST(RealizeClassZ, EqualMeasuresGiveDiagonal) {
    PosetRef a = share(shapes::diamond());
    PosetRef s = share(shapes::zigzag(5));
    Measure p(s, {Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)});
    MeasureSystem sys(a, s, std::vector<Measure>(4, p));
    Coupling c = realize_class_z(sys);
    EXPECT_TRUE(oracle::coupling_ok(c, sys));
    for (const auto& pt : c.points)
        for (int v : pt.values) EXPECT_EQ(v, pt.values.front());
}

TEST(RealizeClassZ, ZigzagAgainstLp) {
    Rng rng(13);
    PosetRef a = share(shapes::diamond());
    for (int n = 3; n <= 6; ++n) {
        PosetRef s = share(shapes::zigzag(n));
        for (int i = 0; i < 10; ++i) {
            MeasureSystem sys = random_sm_system(a, s, rng);
            EXPECT_TRUE(oracle::coupling_ok(realize_class_z(sys), sys));
            EXPECT_TRUE(is_realizable(sys));
        }
    }
}

TEST(RealizeClassZ, Errors) {
    EXPECT_EQ(code_of([&] { realize_class_z(fixture_diamond_y().system); }), Errc::NotClassZ);
    PosetRef c = share(shapes::chain(2));
    MeasureSystem bad(c, c, {Measure::point(c, 1), Measure::point(c, 0)});
    EXPECT_EQ(code_of([&] { realize_class_z(bad); }), Errc::NotStochasticallyMonotone);
}

TEST(Glue, SharedCoordinate) {
    PosetRef s = share(shapes::chain(2));
    PosetRef lo_idx = share(Poset::from_cover_relations({"a", "c"}, {{"a", "c"}}));
    PosetRef hi_idx = share(Poset::from_cover_relations({"c", "b"}, {{"c", "b"}}));
    Coupling lo = Coupling::make(lo_idx, s, {{{0, 0}, Rational(1, 2)}, {{0, 1}, Rational(1, 4)}, {{1, 1}, Rational(1, 4)}});
    // hi index order is (b, c).
    Coupling hi = Coupling::make(hi_idx, s, {{{0, 0}, Rational(1, 4)}, {{1, 0}, Rational(1, 4)}, {{1, 1}, Rational(1, 2)}});
    Coupling g = glue(lo, hi, "c");
    ASSERT_EQ(g.index->size(), 3u);
    EXPECT_EQ(project(g, lo_idx).points.size(), lo.points.size());
    for (std::size_t i = 0; i < lo.points.size(); ++i) EXPECT_EQ(project(g, lo_idx).points[i].mass, lo.points[i].mass);
    for (std::size_t i = 0; i < hi.points.size(); ++i) EXPECT_EQ(project(g, hi_idx).points[i].mass, hi.points[i].mass);
    EXPECT_EQ(g.marginal(g.index->index("a")), lo.marginal(lo_idx->index("a")));
    EXPECT_EQ(g.marginal(g.index->index("b")), hi.marginal(hi_idx->index("b")));
}

TEST(RealizeEnlargeable, BowtieIntoClassY) {
    Rng rng(21);
    PosetRef a = share(shapes::bowtie());
    PosetRef s = share(shapes::y_tree());
    for (int i = 0; i < 20; ++i) {
        MeasureSystem sys = random_sm_system(a, s, rng);
        Coupling c = realize_enlargeable(sys);
        EXPECT_TRUE(oracle::coupling_ok(c, sys));
        EXPECT_TRUE(is_realizable(sys));
    }
}

TEST(RealizeEnlargeable, AcyclicMatchesAcyclicCoupler) {
    Rng rng(22);
    PosetRef a = share(shapes::y_poset());
    PosetRef s = share(shapes::w_poset());
    MeasureSystem sys = random_sm_system(a, s, rng);
    Coupling e = realize_enlargeable(sys);
    Coupling c = realize_acyclic(sys);
    for (std::size_t i = 0; i < a->size(); ++i) EXPECT_EQ(e.marginal(static_cast<int>(i)), c.marginal(static_cast<int>(i)));
}

TEST(RealizeEnlargeable, Errors) {
    EXPECT_EQ(code_of([&] { realize_enlargeable(fixture_diamond_y().system); }), Errc::NotEnlargeable);
    EXPECT_EQ(code_of([&] { realize_enlargeable(fixture_bowtie_diamond().system); }), Errc::TargetInClassB);
}

TEST(Couplings, EqualComparableMeasuresStayOnDiagonal) {
    Rng rng(31);
    PosetRef a = share(shapes::chain(3));
    PosetRef s = share(shapes::diamond());
    for (int i = 0; i < 20; ++i) {
        Measure p = random_measure(s, rng);
        Measure q = random_above(p, rng);
        MeasureSystem sys(a, s, {p, p, q});
        for (const Coupling& c : {realize_acyclic(sys), std::get<Coupling>(realize(sys))})
            for (const auto& pt : c.points) EXPECT_EQ(pt.values[0], pt.values[1]);
    }
}
