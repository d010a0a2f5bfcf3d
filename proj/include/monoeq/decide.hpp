#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monoeq/witness.hpp"

namespace monoeq {

enum class Outcome { Holds, Fails, Unknown };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        case Outcome::Unknown: return "unknown";
    }
    return "?";
}

struct ComponentVerdict {
    std::vector<std::string> index_elements, target_elements;
    Outcome outcome = Outcome::Holds;
    std::string reason;
    std::string coupler;  // for Holds: acyclic, class-z or enlargeable
};

struct Verdict {
    Outcome outcome = Outcome::Holds;
    std::string reason;
    std::vector<ComponentVerdict> components;
    std::optional<Counterexample> counterexample;  // for Fails, on the full pair
};

struct DecideOptions {
    bool build_witness = true;
};

namespace detail {

inline ComponentVerdict decide_connected(const Poset& a, const Poset& s) {
    ComponentVerdict v{a.names(), s.names(), Outcome::Holds, "", ""};
    if (is_acyclic(a).acyclic) {
        v.reason = "index-acyclic";
        v.coupler = "acyclic";
        return v;
    }
    switch (classify(s).cls) {
        case TargetClass::B:
            v.outcome = Outcome::Fails;
            v.reason = "target-class-B";
            return v;
        case TargetClass::Z:
            v.reason = "target-class-Z";
            v.coupler = "class-z";
            return v;
        case TargetClass::Y:
        case TargetClass::W: {
            bool y = classify(s).cls == TargetClass::Y;
            if (!check_enlargeable(a)) {
                v.reason = y ? "target-class-Y/index-enlargeable" : "target-class-W/index-enlargeable";
                v.coupler = "enlargeable";
            } else if (y) {
                v.outcome = Outcome::Fails;
                v.reason = "target-class-Y/index-not-enlargeable";
            } else {
                v.outcome = Outcome::Unknown;
                v.reason = "target-class-W/index-not-enlargeable";
            }
            return v;
        }
    }
    return v;
}

// Places a counterexample on components into the full pair.
inline Counterexample lift(const Counterexample& ce, const PosetRef& a, const PosetRef& s) {
    const Poset& ca = *ce.system.index;
    const Poset& cs = *ce.system.target;
    std::vector<int> image;
    for (const auto& n : cs.names()) image.push_back(s->index(n));
    Measure filler = Measure::point(s, image.front());
    std::vector<Measure> ms;
    for (const auto& n : a->names()) {
        auto i = ca.find(n);
        ms.push_back(i ? ce.system[*i].transported(s, image) : filler);
    }
    Counterexample out = finish(MeasureSystem(a, s, std::move(ms)), ce.provenance);
    out.indicators.reset();
    return out;
}

}  // namespace detail

inline Verdict decide_equivalence(const Poset& a, const Poset& s, DecideOptions opt = {}) {
    if (a.empty() || s.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    Verdict out;
    std::vector<Poset> ac = components(a), sc = components(s);
    std::optional<std::size_t> fail;
    std::size_t fail_i = 0, fail_j = 0;
    for (std::size_t i = 0; i < ac.size(); ++i)
        for (std::size_t j = 0; j < sc.size(); ++j) {
            out.components.push_back(detail::decide_connected(ac[i], sc[j]));
            if (out.components.back().outcome == Outcome::Fails && !fail) {
                fail = out.components.size() - 1;
                fail_i = i;
                fail_j = j;
            }
        }
    if (fail) {
        out.outcome = Outcome::Fails;
        out.reason = out.components[*fail].reason;
        if (opt.build_witness) {
            const Poset& pa = ac[fail_i];
            const Poset& ps = sc[fail_j];
            Counterexample ce = classify(ps).cls == TargetClass::B ? counterexample_class_b(pa, ps)
                                                                    : counterexample_class_y(pa, ps);
            if (ac.size() == 1 && sc.size() == 1)
                out.counterexample = std::move(ce);
            else
                out.counterexample = detail::lift(ce, share(a), share(s));
        }
        return out;
    }
    for (const auto& v : out.components)
        if (v.outcome == Outcome::Unknown) {
            out.outcome = Outcome::Unknown;
            out.reason = v.reason;
            return out;
        }
    out.outcome = Outcome::Holds;
    out.reason = out.components.size() == 1 ? out.components.front().reason : "all-components-hold";
    return out;
}

// A poset is Markov-equivalent to itself exactly when its cover graph is acyclic.
inline Verdict decide_markov(const Poset& s, DecideOptions opt = {}) {
    Verdict v = decide_equivalence(s, s, opt);
    bool acyclic = is_acyclic(s).acyclic;
    if ((v.outcome == Outcome::Holds) != acyclic) throw Error(Errc::Internal, "self-equivalence disagrees with acyclicity");
    return v;
}

// Realizes a system by the coupler named in a Holds verdict.
inline Coupling realize_by_coupler(const MeasureSystem& sys, const std::string& coupler) {
    if (coupler == "acyclic") return realize_acyclic(sys);
    if (coupler == "class-z") return realize_class_z(sys);
    if (coupler == "enlargeable") return realize_enlargeable(sys);
    throw Error(Errc::BadParameter, "unknown coupler '" + coupler + "'");
}

}  // namespace monoeq
