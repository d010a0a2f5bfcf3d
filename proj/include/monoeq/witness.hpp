#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monoeq/coupling.hpp"

namespace monoeq {

// Stochastically monotone system with no monotone realization.
struct Counterexample {
    MeasureSystem system;
    std::string provenance;
    InfeasibilityCertificate certificate;
    std::optional<Measure> bottom, top;                // measures below / above every P_alpha
    std::optional<std::vector<ElementSet>> indicators; // indicator family U_alpha, when known
};

namespace detail {

inline InfeasibilityCertificate certify_infeasible(const MeasureSystem& sys) {
    require_monotone(sys);
    Realization r = realize(sys);
    if (auto* c = std::get_if<InfeasibilityCertificate>(&r)) return *c;
    throw Error(Errc::Internal, "constructed system turned out to be realizable");
}

inline Counterexample finish(MeasureSystem sys, std::string provenance) {
    Counterexample ce{sys, std::move(provenance), certify_infeasible(sys), std::nullopt, std::nullopt, std::nullopt};
    return ce;
}

inline MeasureSystem system_by_name(const PosetRef& a, const PosetRef& s,
                                    const std::vector<std::pair<std::string, Measure>>& named) {
    std::vector<Measure> ms(a->size());
    std::vector<bool> set(a->size(), false);
    for (const auto& [n, m] : named) {
        int i = a->index(n);
        ms[static_cast<std::size_t>(i)] = m;
        set[static_cast<std::size_t>(i)] = true;
    }
    for (bool b : set)
        if (!b) throw Error(Errc::Internal, "fixture misses an index element");
    return MeasureSystem(a, s, std::move(ms));
}

inline std::string idx(const std::string& stem, int i) { return stem + std::to_string(i); }

}  // namespace detail

// Diamond into diamond.
inline Counterexample fixture_diamond_diamond() {
    PosetRef a = share(shapes::diamond());
    PosetRef s = share(shapes::diamond());
    auto u = [&](std::vector<std::string> ids) { return Measure::uniform(s, ids); };
    return detail::finish(detail::system_by_name(a, s, {{"x", u({"x", "y"})}, {"y", u({"x", "w"})},
                                                        {"z", u({"y", "z"})}, {"w", u({"y", "w"})}}),
                          "ex.dd");
}

// Bowtie into diamond.
inline Counterexample fixture_bowtie_diamond() {
    PosetRef a = share(shapes::bowtie());
    PosetRef s = share(shapes::diamond());
    auto u = [&](std::vector<std::string> ids) { return Measure::uniform(s, ids); };
    Counterexample ce = detail::finish(
        detail::system_by_name(a, s, {{"a0", u({"x", "w"})}, {"a1", u({"y", "z"})}, {"b0", u({"y", "w"})},
                                      {"b1", u({"z", "w"})}}),
        "ex.bd");
    ce.bottom = Measure::point(s, s->index("x"));
    ce.top = Measure::point(s, s->index("w"));
    return ce;
}

// Bowtie into the k-crown.
inline Counterexample fixture_bowtie_crown(int k) {
    if (k < 2) throw Error(Errc::BadParameter, "crown size must be at least 2");
    PosetRef a = share(shapes::bowtie());
    PosetRef s = share(shapes::crown(k));
    auto x = [&](int i) { return detail::idx("x", i); };
    auto y = [&](int i) { return detail::idx("y", i); };
    ElementSet lo = 0, hi = 0;
    for (int i = 0; i < k; ++i) {
        lo |= bit(s->index(x(i)));
        hi |= bit(s->index(y(i)));
    }
    auto el = [&](const std::string& n) { return bit(s->index(n)); };
    auto u = [&](ElementSet set) { return Measure::uniform(s, set); };
    Rational head(1, k), tail(k - 1, k);
    Measure pa0 = Measure::mixture({{tail, u(lo & ~el(x(1)))}, {head, u(el(y(0)) | el(x(1)))}});
    Measure pa1 = Measure::mixture({{head, u(el(x(0)))}, {tail, u(s->all() & ~el(x(0)) & ~el(y(0)))}});
    Measure pb0 = Measure::mixture({{head, u(el(y(k - 1)))}, {tail, u(s->all() & ~el(x(0)) & ~el(y(k - 1)))}});
    Measure pb1 = Measure::mixture({{tail, u(el(x(0)) | (hi & ~el(y(0)) & ~el(y(k - 1))))},
                                    {head, u(el(y(0)) | el(y(k - 1)))}});
    Counterexample ce = detail::finish(
        detail::system_by_name(a, s, {{"a0", pa0}, {"a1", pa1}, {"b0", pb0}, {"b1", pb1}}), "ex.bc");
    ce.bottom = u(lo);
    ce.top = u(hi);
    std::vector<ElementSet> ind(4);
    ind[static_cast<std::size_t>(a->index("a0"))] = el(y(0));
    ind[static_cast<std::size_t>(a->index("a1"))] = hi & ~el(y(0));
    ind[static_cast<std::size_t>(a->index("b0"))] = lo & ~el(x(0));
    ind[static_cast<std::size_t>(a->index("b1"))] = el(x(0));
    ce.indicators = ind;
    return ce;
}

// Diamond a < b, c < d into the k-crown.
inline Counterexample fixture_diamond_crown(int k) {
    if (k < 2) throw Error(Errc::BadParameter, "crown size must be at least 2");
    PosetRef a = share(shapes::diamond("a", "b", "c", "d"));
    PosetRef s = share(shapes::crown(k));
    ElementSet lo = 0, hi = 0;
    for (int i = 0; i < k; ++i) {
        lo |= bit(s->index(detail::idx("x", i)));
        hi |= bit(s->index(detail::idx("y", i)));
    }
    auto el = [&](const std::string& n) { return bit(s->index(n)); };
    ElementSet ub = el("y0") | (lo & ~el("x0"));
    ElementSet uc = el(detail::idx("y", k - 1)) | (lo & ~el("x0"));
    Counterexample ce = detail::finish(
        detail::system_by_name(a, s, {{"a", Measure::uniform(s, lo)}, {"b", Measure::uniform(s, ub)},
                                      {"c", Measure::uniform(s, uc)}, {"d", Measure::uniform(s, hi)}}),
        "ex.dc");
    std::vector<ElementSet> ind(4);
    ind[static_cast<std::size_t>(a->index("a"))] = el("x0");
    ind[static_cast<std::size_t>(a->index("b"))] = ub;
    ind[static_cast<std::size_t>(a->index("c"))] = uc;
    ind[static_cast<std::size_t>(a->index("d"))] = 0;
    ce.indicators = ind;
    return ce;
}

// Diamond a < b, c < d into the Y-poset x, y < z < w.
inline Counterexample fixture_diamond_y() {
    PosetRef a = share(shapes::diamond("a", "b", "c", "d"));
    PosetRef s = share(shapes::y_poset());
    auto u = [&](std::vector<std::string> ids) { return Measure::uniform(s, ids); };
    return detail::finish(detail::system_by_name(a, s, {{"a", u({"x", "y"})}, {"b", u({"x", "w"})},
                                                        {"c", u({"y", "w"})}, {"d", u({"z", "w"})}}),
                          "dia.y");
}

inline Counterexample fixture(const std::string& name, int k = 0) {
    if (name == "ex.dd") return fixture_diamond_diamond();
    if (name == "ex.bd") return fixture_bowtie_diamond();
    if (name == "ex.bc") return fixture_bowtie_crown(k);
    if (name == "ex.dc") return fixture_diamond_crown(k);
    if (name == "dia.y") return fixture_diamond_y();
    throw Error(Errc::UnknownFixture, "unknown fixture '" + name + "'");
}

// Moves a counterexample on the 2-crown or k-crown index (a_i, b_i labels)
// to a larger crown; new elements copy the measure of b_{k-1}.
inline Counterexample extend_crown(const Counterexample& base, int k2) {
    const Poset& a = *base.system.index;
    int k = static_cast<int>(a.size()) / 2;
    if (k < 2 || a != shapes::crown(k, "a", "b"))
        throw Error(Errc::PreconditionFailed, "index poset is not a crown labelled a_i, b_i");
    if (k2 < k) throw Error(Errc::BadParameter, "cannot shrink a crown");
    PosetRef na = share(shapes::crown(k2, "a", "b"));
    std::vector<Measure> ms;
    const Measure& last = base.system.at(detail::idx("b", k - 1));
    for (const auto& n : na->names()) ms.push_back(a.find(n) ? base.system.at(n) : last);
    Counterexample ce = detail::finish(MeasureSystem(na, base.system.target, std::move(ms)), base.provenance + "+extend");
    ce.bottom = base.bottom;
    ce.top = base.top;
    return ce;
}

namespace detail {

// Pattern in a class-B target: a diamond, else the smallest crown.
struct TargetCore {
    bool diamond = false;
    int k = 0;
    Embedding embed;
};

inline TargetCore class_b_core(const Poset& s) {
    if (auto e = find_induced_pattern(s, shapes::diamond())) return {true, 0, *e};
    for (int k = 2; 2 * k <= static_cast<int>(s.size()); ++k)
        if (auto e = find_induced_pattern(s, shapes::crown(k))) return {false, k, *e};
    throw Error(Errc::Internal, "class-B target without an induced diamond or crown");
}

inline Measure push(const Measure& m, const PosetRef& host, const Embedding& e) { return m.transported(host, e.image); }

}  // namespace detail

inline Counterexample counterexample_class_b(const Poset& a_in, const Poset& s_in) {
    if (a_in.empty() || s_in.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (!is_connected(a_in) || !is_connected(s_in)) throw Error(Errc::NotConnected, "posets must be connected");
    if (is_acyclic(a_in).acyclic) throw Error(Errc::PreconditionFailed, "index poset is acyclic");
    if (classify(s_in).cls != TargetClass::B) throw Error(Errc::PreconditionFailed, "target is not in class B");
    PosetRef a = share(a_in), s = share(s_in);
    detail::TargetCore core = detail::class_b_core(s_in);
    std::vector<Measure> ms(a->size());
    std::string prov;
    if (auto e = find_induced_pattern(a_in, shapes::diamond("a", "b", "c", "d"))) {
        Counterexample base = core.diamond ? fixture_diamond_diamond() : fixture_diamond_crown(core.k);
        const std::vector<std::string> roles = core.diamond ? std::vector<std::string>{"x", "y", "z", "w"}
                                                            : std::vector<std::string>{"a", "b", "c", "d"};
        auto role = [&](int r) { return detail::push(base.system.at(roles[static_cast<std::size_t>(r)]), s, core.embed); };
        Poset pat = shapes::diamond("a", "b", "c", "d");
        int b = e->image[static_cast<std::size_t>(pat.index("b"))];
        int c = e->image[static_cast<std::size_t>(pat.index("c"))];
        for (std::size_t al = 0; al < a->size(); ++al) {
            int x = static_cast<int>(al);
            int r;
            if (x == b) r = 1;
            else if (x == c) r = 2;
            else if (a->less(b, x) || a->less(c, x)) r = 3;
            else r = 0;
            ms[al] = role(r);
        }
        prov = "class-B/diamond-index/" + base.provenance;
    } else {
        std::vector<int> cyc = induced_cycle(a_in, is_acyclic(a_in).cycle);
        const std::size_t n = cyc.size();
        auto up_step = [&](std::size_t i) { return a->covers(cyc[i], cyc[(i + 1) % n]); };
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!up_step((i + n - 1) % n) && up_step(i)) {
                start = i;
                break;
            }
        std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(start), cyc.end());
        std::vector<int> lows, highs;
        for (std::size_t i = 0; i < n; ++i) {
            bool in_up = up_step((i + n - 1) % n), out_up = up_step(i);
            if (!in_up && out_up) lows.push_back(cyc[i]);
            if (in_up && !out_up) highs.push_back(cyc[i]);
        }
        int k = static_cast<int>(lows.size());
        Counterexample base0 = core.diamond ? fixture_bowtie_diamond() : fixture_bowtie_crown(core.k);
        Counterexample base = extend_crown(base0, k);
        ElementSet on_cycle = 0;
        for (int v : cyc) on_cycle |= bit(v);
        // each non-maximum cycle vertex lies above exactly one a_i
        std::vector<int> low_of(a->size(), -1);
        std::vector<int> high_of(a->size(), -1);
        for (std::size_t i = 0; i < n; ++i) {
            auto ht = std::find(highs.begin(), highs.end(), cyc[i]);
            if (ht != highs.end()) high_of[static_cast<std::size_t>(cyc[i])] = static_cast<int>(ht - highs.begin());
        }
        for (std::size_t i = 0; i < n; ++i) {
            int v = cyc[i];
            if (high_of[static_cast<std::size_t>(v)] >= 0) continue;
            for (int j = 0; j < k; ++j)
                if (a->leq(lows[static_cast<std::size_t>(j)], v)) low_of[static_cast<std::size_t>(v)] = j;
        }
        for (std::size_t al = 0; al < a->size(); ++al) {
            int x = static_cast<int>(al);
            if (contains(on_cycle, x)) {
                if (high_of[al] >= 0)
                    ms[al] = detail::push(base.system.at(detail::idx("b", high_of[al])), s, core.embed);
                else
                    ms[al] = detail::push(base.system.at(detail::idx("a", low_of[al])), s, core.embed);
            } else {
                bool above = false;
                for (int v : cyc) above = above || a->less(v, x);
                ms[al] = detail::push(above ? *base.top : *base.bottom, s, core.embed);
            }
        }
        prov = "class-B/cycle-index/" + base.provenance;
    }
    return detail::finish(MeasureSystem(a, s, std::move(ms)), prov);
}

inline Counterexample counterexample_class_y(const Poset& a_in, const Poset& s_in) {
    if (a_in.empty() || s_in.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (!is_connected(a_in) || !is_connected(s_in)) throw Error(Errc::NotConnected, "posets must be connected");
    auto obs = check_enlargeable(a_in);
    if (!obs) throw Error(Errc::PreconditionFailed, "index poset is enlargeable");
    Classification cl = classify(s_in);
    if (cl.cls != TargetClass::Y) throw Error(Errc::PreconditionFailed, "target is not in class Y");
    PosetRef a = share(a_in), s = share(s_in);
    Counterexample base = fixture_diamond_y();
    const Embedding& e = *cl.embedding;
    // On a dual Y the roles of the diamond's bottom and top swap.
    std::vector<std::string> roles = e.dual ? std::vector<std::string>{"d", "b", "c", "a"}
                                            : std::vector<std::string>{"a", "b", "c", "d"};
    std::vector<Measure> tilde;
    for (const auto& r : roles) tilde.push_back(detail::push(base.system.at(r), s, e));
    enum Role { RA = 0, RB = 1, RC = 2, RD = 3 };
    std::vector<int> role(a->size(), RC);
    std::string prov = "class-Y/";
    switch (obs->kind) {
        case ObstructionKind::Diamond:
        case ObstructionKind::TallCycle: {
            std::vector<int> cyc = obs->kind == ObstructionKind::Diamond ? induced_cycle_height3(a_in) : obs->elements;
            const std::size_t n = cyc.size();
            int a0 = -1;
            for (std::size_t i = 0; i < n && a0 < 0; ++i) {
                int prev = cyc[(i + n - 1) % n], cur = cyc[i], next = cyc[(i + 1) % n];
                if ((a->covers(prev, cur) && a->covers(cur, next)) || (a->covers(next, cur) && a->covers(cur, prev)))
                    a0 = cur;
            }
            if (a0 < 0) throw Error(Errc::Internal, "cycle of height 3 without an interior chain vertex");
            for (std::size_t al = 0; al < a->size(); ++al) {
                int x = static_cast<int>(al);
                if (x == a0) role[al] = RB;
                else if (a->less(a0, x)) role[al] = RD;
                else if (a->less(x, a0)) role[al] = RA;
            }
            prov += "tall-cycle";
            break;
        }
        case ObstructionKind::Crown: {
            Poset pat = shapes::crown(obs->k, "a", "b");
            int a0 = obs->elements[static_cast<std::size_t>(pat.index("a0"))];
            int bl = obs->elements[static_cast<std::size_t>(pat.index(detail::idx("b", obs->k - 1)))];
            ElementSet u = a->up(a0), v = a->down(bl);
            for (std::size_t al = 0; al < a->size(); ++al) {
                int x = static_cast<int>(al);
                bool iu = contains(u, x), iv = contains(v, x);
                role[al] = iu && iv ? RB : iu ? RD : iv ? RA : RC;
            }
            prov += "crown";
            break;
        }
        case ObstructionKind::DoubleBowtie: {
            Poset pat = shapes::double_bowtie();
            int b1 = obs->elements[static_cast<std::size_t>(pat.index("b1"))];
            int b3 = obs->elements[static_cast<std::size_t>(pat.index("b3"))];
            ElementSet d1 = a->down(b1), d3 = a->down(b3);
            for (std::size_t al = 0; al < a->size(); ++al) {
                int x = static_cast<int>(al);
                bool i1 = contains(d1, x), i3 = contains(d3, x);
                role[al] = i1 && i3 ? RA : i1 ? RB : i3 ? RC : RD;
            }
            prov += "double-bowtie";
            break;
        }
    }
    std::vector<Measure> ms;
    for (int r : role) ms.push_back(tilde[static_cast<std::size_t>(r)]);
    return detail::finish(MeasureSystem(a, s, std::move(ms)), prov);
}

}  // namespace monoeq
