#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "monoeq/decide.hpp"
#include "monoeq/enumerate.hpp"
#include "monoeq/io.hpp"
#include "monoeq/random.hpp"

namespace monoeq::sweeps {

// Outcome of one property sweep. `report` is deterministic for a given seed.
struct Report {
    explicit Report(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::uint64_t cases = 0;
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    std::vector<std::string> failures;

    void mix(std::string_view s) {
        for (unsigned char c : s) {
            digest ^= c;
            digest *= 0x100000001b3ULL;
        }
        digest ^= 0xff;
        digest *= 0x100000001b3ULL;
    }
    void fail(const std::string& why) {
        pass = false;
        if (failures.size() < 20) failures.push_back(why);
    }
    // Runs one case; exceptions count as failures.
    void check(const std::string& label, const std::function<void()>& body) {
        ++cases;
        try {
            body();
        } catch (const std::exception& e) {
            fail(label + ": " + e.what());
        }
    }
    std::string text() const {
        std::ostringstream out;
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
        out << name << ": " << (pass ? "pass" : "fail") << " cases=" << cases << " digest=" << hex << "\n";
        for (const auto& f : failures) out << "  " << f << "\n";
        return out.str();
    }
};

inline std::vector<Poset> connected_up_to(int n) {
    std::vector<Poset> out;
    for (int m = 1; m <= n; ++m)
        for (auto& p : enumerate_connected_posets(m)) out.push_back(std::move(p));
    return out;
}

inline std::string label(const Poset& p) { return io::write_poset("p", p).substr(8); }

inline std::string measure_text(const Measure& m) {
    std::string out;
    for (const auto& q : m.masses()) out += to_string(q) + " ";
    return out;
}

// strassen_pair succeeds exactly when up-set dominance holds.
inline Report strassen(int max_n, int pairs, std::uint64_t seed) {
    Report r("strassen");
    Rng rng(seed);
    for (const auto& p0 : connected_up_to(max_n)) {
        PosetRef p = share(p0);
        for (int i = 0; i < pairs; ++i) {
            auto [p1, p2] = random_measure_pair(p, rng);
            r.check(label(*p), [&, &p1 = p1, &p2 = p2] {
                Dominance d = stochastically_leq(p1, p2);
                r.mix(measure_text(p1));
                r.mix(measure_text(p2));
                try {
                    UpwardKernel k = strassen_pair(p1, p2);
                    if (!d.holds) r.fail("kernel found for a non-dominated pair on " + label(*p));
                    if (!k.is_upward() || k.apply(p1) != p2) r.fail("kernel equation broken on " + label(*p));
                    r.mix("kernel");
                } catch (const NotDominatedError& e) {
                    if (d.holds) r.fail("dominated pair rejected on " + label(*p));
                    ElementSet u = e.witness();
                    if (!p->is_up_set(u) || !(p1.of(u) > p2.of(u))) r.fail("bad min-cut witness on " + label(*p));
                    r.mix(format_set(*p, u));
                }
            });
        }
    }
    return r;
}

// Self-equivalence of every connected poset.
inline Report markov(int max_n, int systems, std::uint64_t seed) {
    Report r("markov");
    Rng rng(seed);
    for (const auto& s0 : connected_up_to(max_n)) {
        PosetRef s = share(s0);
        if (is_acyclic(*s).acyclic) {
            for (int i = 0; i < systems; ++i) {
                r.check(label(*s), [&] {
                    MeasureSystem sys = random_sm_system(s, s, rng);
                    if (!is_realizable(sys)) r.fail("realize rejects a system on acyclic " + label(*s));
                    Coupling c = realize_acyclic(sys);
                    if (!c.realizes(sys)) r.fail("acyclic coupler marginals wrong on " + label(*s));
                    r.mix(io::write_coupling("s", "s", c));
                });
            }
        } else {
            r.check(label(*s), [&] {
                Counterexample ce = counterexample_class_b(*s, *s);
                if (!is_stochastically_monotone(ce.system).ok) r.fail("counterexample not monotone on " + label(*s));
                if (!(ce.certificate.lhs > ce.certificate.sup)) r.fail("certificate not strict on " + label(*s));
                r.mix(ce.provenance);
                r.mix(io::write_certificate("s", "s", ce.certificate));
            });
        }
    }
    return r;
}

inline bool support_monotone(const Coupling& c) {
    for (const auto& p : c.points)
        if (!is_monotone_map(*c.index, *c.target, p.values)) return false;
    return true;
}

// Path-shaped targets: the inverse-transform coupler against the LP.
inline Report class_z(int min_len, int max_len, int systems, std::uint64_t seed) {
    Report r("class-z");
    Rng rng(seed);
    std::vector<std::pair<std::string, Poset>> indices{
        {"diamond", shapes::diamond()}, {"bowtie", shapes::bowtie()}, {"crown3", shapes::crown(3)}};
    for (int n = min_len; n <= max_len; ++n) {
        PosetRef s = share(shapes::zigzag(n));
        for (const auto& [an, a0] : indices) {
            PosetRef a = share(a0);
            for (int i = 0; i < systems; ++i) {
                std::string where = an + " into zigzag " + std::to_string(n);
                r.check(where, [&] {
                    MeasureSystem sys = random_sm_system(a, s, rng);
                    Coupling c = realize_class_z(sys);
                    if (!c.realizes(sys)) r.fail("marginals wrong, " + where);
                    if (!support_monotone(c)) r.fail("support not monotone, " + where);
                    if (!is_realizable(sys)) r.fail("realize disagrees, " + where);
                    r.mix(io::write_coupling("a", "s", c));
                });
            }
        }
    }
    return r;
}

// Middle measure between random dominated families on a class-Y tree.
inline Report insert_middle(int instances, std::uint64_t seed) {
    Report r("insert-middle");
    Rng rng(seed);
    PosetRef s = share(shapes::y_tree());
    for (int i = 0; i < instances; ++i) {
        r.check("instance " + std::to_string(i), [&] {
            Measure centre = random_measure(s, rng);
            int m = 1 + uniform_int(rng, 3), n = 1 + uniform_int(rng, 3);
            std::vector<Measure> lower, upper;
            for (int j = 0; j < m; ++j) lower.push_back(random_below(random_below(centre, rng), rng));
            for (int j = 0; j < n; ++j) upper.push_back(random_above(random_above(centre, rng), rng));
            Measure mid = monoeq::insert_middle(lower, upper);
            for (const auto& lo : lower)
                if (!stochastically_leq(lo, mid).holds) r.fail("lower sandwich broken in instance " + std::to_string(i));
            for (const auto& hi : upper)
                if (!stochastically_leq(mid, hi).holds) r.fail("upper sandwich broken in instance " + std::to_string(i));
            r.mix(measure_text(mid));
        });
    }
    return r;
}

// Enlargement succeeds exactly when no obstruction is found.
inline Report enlarge(int max_n) {
    Report r("enlarge");
    for (const auto& p : connected_up_to(max_n)) {
        r.check(label(p), [&] {
            auto obs = check_enlargeable(p);
            try {
                Poset big = enlarge_to_acyclic(p);
                if (obs) r.fail("enlarged despite obstruction: " + label(p));
                if (!is_acyclic(big).acyclic) r.fail("enlargement has a cycle: " + label(p));
                if (induced_subposet(big, p.names()) != p) r.fail("enlargement does not induce input: " + label(p));
                r.mix(label(big));
            } catch (const NotEnlargeableError&) {
                if (!obs) r.fail("enlargement failed without obstruction: " + label(p));
                r.mix(obstruction_name(obs->kind));
            }
        });
    }
    return r;
}

// Decisions against the Y-poset, with couplings for the positive cases.
inline Report class_y(int systems, std::uint64_t seed) {
    Report r("class-y");
    Rng rng(seed);
    PosetRef s = share(shapes::y_poset());
    std::vector<std::pair<std::string, Poset>> failing{{"diamond", shapes::diamond()},
                                                      {"crown3", shapes::crown(3)},
                                                      {"crown4", shapes::crown(4)},
                                                      {"double-bowtie", shapes::double_bowtie()},
                                                      {"tall-cycle", shapes::tall_cycle()}};
    std::vector<std::pair<std::string, Poset>> holding{{"bowtie", shapes::bowtie()},
                                                      {"chain3", shapes::chain(3)},
                                                      {"bowtie-tree", shapes::bowtie_tree()},
                                                      {"y-tree", shapes::y_tree()},
                                                      {"bipartite33", shapes::bipartite(3, 3)}};
    for (const auto& [an, a] : failing) {
        r.check(an, [&] {
            Verdict v = decide_equivalence(a, *s);
            if (v.outcome != Outcome::Fails || !v.counterexample) {
                r.fail(an + " should fail");
                return;
            }
            const Counterexample& ce = *v.counterexample;
            if (!is_stochastically_monotone(ce.system).ok) r.fail(an + ": counterexample not monotone");
            if (is_realizable(ce.system)) r.fail(an + ": counterexample realizable");
            if (!(certificate_value(ce.system, ce.certificate.f).lhs > ce.certificate.sup))
                r.fail(an + ": certificate not strict");
            r.mix(ce.provenance);
        });
    }
    for (const auto& [an, a0] : holding) {
        PosetRef a = share(a0);
        Verdict v = decide_equivalence(*a, *s);
        r.check(an, [&] {
            if (v.outcome != Outcome::Holds) r.fail(an + " should hold");
            r.mix(v.reason);
        });
        for (int i = 0; i < systems; ++i) {
            r.check(an, [&] {
                MeasureSystem sys = random_sm_system(a, s, rng);
                Coupling c = realize_enlargeable(sys);
                if (!c.realizes(sys) || !support_monotone(c)) r.fail(an + ": enlargeable coupler wrong");
                r.mix(io::write_coupling("a", "s", c));
            });
        }
    }
    return r;
}

// Class B exactly when a diamond or a crown is induced.
inline Report classifier(int max_n) {
    Report r("classifier");
    for (const auto& p : connected_up_to(max_n)) {
        r.check(label(p), [&] {
            bool pattern = find_induced_pattern(p, shapes::diamond()).has_value();
            for (int k = 2; !pattern && 2 * k <= static_cast<int>(p.size()); ++k)
                pattern = find_induced_pattern(p, shapes::crown(k)).has_value();
            TargetClass c = classify(p).cls;
            if ((c == TargetClass::B) != pattern) r.fail("classifier disagrees on " + label(p));
            r.mix(class_name(c));
        });
    }
    return r;
}

struct SuiteOptions {
    std::uint64_t seed = 1;
    int strassen_max_n = 5, strassen_pairs = 50;
    int markov_max_n = 5, markov_systems = 100;
    int zigzag_min = 3, zigzag_max = 7, zigzag_systems = 100;
    int insert_instances = 200;
    int enlarge_max_n = 6;
    int class_y_systems = 50;
    int classifier_max_n = 6;
};

inline std::vector<std::string> suite_names() {
    return {"strassen", "markov", "class-z", "insert-middle", "enlarge", "class-y", "classifier"};
}

inline Report run(const std::string& name, const SuiteOptions& o) {
    if (name == "strassen") return strassen(o.strassen_max_n, o.strassen_pairs, o.seed);
    if (name == "markov") return markov(o.markov_max_n, o.markov_systems, o.seed);
    if (name == "class-z") return class_z(o.zigzag_min, o.zigzag_max, o.zigzag_systems, o.seed);
    if (name == "insert-middle") return insert_middle(o.insert_instances, o.seed);
    if (name == "enlarge") return enlarge(o.enlarge_max_n);
    if (name == "class-y") return class_y(o.class_y_systems, o.seed);
    if (name == "classifier") return classifier(o.classifier_max_n);
    throw Error(Errc::BadParameter, "unknown sweep '" + name + "'");
}

}  // namespace monoeq::sweeps
