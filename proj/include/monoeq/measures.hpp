#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monoeq/rational.hpp"
#include "monoeq/structure.hpp"

namespace monoeq {

inline bool same_poset(const PosetRef& a, const PosetRef& b) { return a == b || (a && b && *a == *b); }

// Exact probability measure on a finite poset.
class Measure {
public:
    Measure() = default;
    Measure(PosetRef base, std::vector<Rational> mass) : base_(std::move(base)), mass_(std::move(mass)) {
        if (!base_) throw Error(Errc::InvalidMeasure, "measure without base poset");
        if (mass_.size() != base_->size()) throw Error(Errc::InvalidMeasure, "mass vector has wrong length");
        Rational total = 0;
        for (auto& m : mass_) {
            m.canonicalize();
            if (m < 0) throw Error(Errc::InvalidMeasure, "negative mass");
            total += m;
        }
        if (total != 1) throw Error(Errc::InvalidMeasure, "masses sum to " + to_string(total));
    }

    static Measure point(PosetRef base, int x) {
        std::vector<Rational> m(base->size(), 0);
        m[static_cast<std::size_t>(x)] = 1;
        return Measure(std::move(base), std::move(m));
    }
    static Measure uniform(PosetRef base, ElementSet s) {
        if (s == 0) throw Error(Errc::InvalidMeasure, "uniform measure on the empty set");
        std::vector<Rational> m(base->size(), 0);
        Rational w(1, set_size(s));
        for (int i : members(s)) m[static_cast<std::size_t>(i)] = w;
        return Measure(std::move(base), std::move(m));
    }
    static Measure uniform(PosetRef base, const std::vector<std::string>& ids) {
        ElementSet s = base->set_of(ids);
        return uniform(std::move(base), s);
    }
    // sum of w_i * m_i
    static Measure mixture(const std::vector<std::pair<Rational, Measure>>& parts) {
        if (parts.empty()) throw Error(Errc::InvalidMeasure, "empty mixture");
        PosetRef b = parts.front().second.base_ref();
        std::vector<Rational> m(b->size(), 0);
        for (const auto& [w, mu] : parts) {
            if (!same_poset(mu.base_ref(), b)) throw Error(Errc::BaseMismatch, "mixture of measures on different posets");
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += w * mu.mass_[i];
        }
        return Measure(b, std::move(m));
    }

    const Poset& base() const { return *base_; }
    const PosetRef& base_ref() const { return base_; }
    const std::vector<Rational>& masses() const { return mass_; }
    const Rational& operator[](int i) const { return mass_[static_cast<std::size_t>(i)]; }
    Rational of(ElementSet s) const {
        Rational r = 0;
        for (int i : members(s)) r += mass_[static_cast<std::size_t>(i)];
        return r;
    }
    ElementSet support() const {
        ElementSet s = 0;
        for (std::size_t i = 0; i < mass_.size(); ++i)
            if (mass_[i] != 0) s |= bit(static_cast<int>(i));
        return s;
    }
    // Same masses, viewed on another poset over the same identifiers.
    Measure rebased(PosetRef other) const {
        std::vector<Rational> m(other->size(), 0);
        for (std::size_t i = 0; i < mass_.size(); ++i)
            if (mass_[i] != 0) m[static_cast<std::size_t>(other->index(base_->name(static_cast<int>(i))))] = mass_[i];
        return Measure(std::move(other), std::move(m));
    }
    // Image under an injective element map into `host`.
    Measure transported(PosetRef host, const std::vector<int>& image) const {
        std::vector<Rational> m(host->size(), 0);
        for (std::size_t i = 0; i < mass_.size(); ++i) m[static_cast<std::size_t>(image[i])] += mass_[i];
        return Measure(std::move(host), std::move(m));
    }

    friend bool operator==(const Measure& a, const Measure& b) {
        return same_poset(a.base_, b.base_) && a.mass_ == b.mass_;
    }

private:
    PosetRef base_;
    std::vector<Rational> mass_;
};

// Family of measures on `target` indexed by the elements of `index`.
struct MeasureSystem {
    PosetRef index;
    PosetRef target;
    std::vector<Measure> measures;

    MeasureSystem() = default;
    MeasureSystem(PosetRef a, PosetRef s, std::vector<Measure> ms)
        : index(std::move(a)), target(std::move(s)), measures(std::move(ms)) {
        if (measures.size() != index->size())
            throw Error(Errc::BaseMismatch, "one measure per index element is required");
        for (auto& m : measures) {
            if (!same_poset(m.base_ref(), target)) throw Error(Errc::BaseMismatch, "measure lives on another poset");
        }
    }
    const Measure& operator[](int alpha) const { return measures[static_cast<std::size_t>(alpha)]; }
    const Measure& at(const std::string& alpha) const { return (*this)[index->index(alpha)]; }
};

struct Dominance {
    bool holds = true;
    ElementSet witness = 0;  // up-set maximising p1(U) - p2(U) when violated
    Rational gap = 0;        // that maximum
};

inline Dominance stochastically_leq(const Measure& p1, const Measure& p2) {
    if (!same_poset(p1.base_ref(), p2.base_ref())) throw Error(Errc::BaseMismatch, "measures on different posets");
    Dominance d;
    for (ElementSet u : p1.base().up_sets()) {
        Rational g = p1.of(u) - p2.of(u);
        if (g > d.gap) {
            d.gap = g;
            d.witness = u;
        }
    }
    d.holds = d.gap <= 0;
    return d;
}

inline bool down_set_dominance(const Measure& p1, const Measure& p2) {
    if (!same_poset(p1.base_ref(), p2.base_ref())) throw Error(Errc::BaseMismatch, "measures on different posets");
    Poset d = dual(p1.base());
    for (ElementSet v : d.up_sets())
        if (p1.of(v) < p2.of(v)) return false;
    return true;
}

struct MonotonicityCheck {
    bool ok = true;
    int lower = -1, upper = -1;  // first violating pair lower < upper
    ElementSet witness = 0;
};

inline MonotonicityCheck is_stochastically_monotone(const MeasureSystem& sys) {
    const Poset& a = *sys.index;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int j : members(a.up(static_cast<int>(i)) & ~bit(static_cast<int>(i)))) {
            Dominance d = stochastically_leq(sys[static_cast<int>(i)], sys[j]);
            if (!d.holds) return {false, static_cast<int>(i), j, d.witness};
        }
    return {};
}

// ---------------------------------------------------------------- distribution functions

struct DistFn {
    RootedTree tree;
    std::vector<Rational> value;
    const Rational& operator[](int x) const { return value[static_cast<std::size_t>(x)]; }
};

inline DistFn distribution_function(const RootedTree& t, const Measure& p) {
    if (!(t.base == p.base())) throw Error(Errc::BaseMismatch, "tree and measure use different posets");
    DistFn f{t, {}};
    for (std::size_t x = 0; x < t.base.size(); ++x) f.value.push_back(p.of(t.section[x]));
    return f;
}

inline Rational successor_sum(const RootedTree& t, const std::vector<Rational>& f, int x) {
    Rational s = 0;
    for (int c : members(t.children[static_cast<std::size_t>(x)])) s += f[static_cast<std::size_t>(c)];
    return s;
}

inline Measure measure_from_distribution(const RootedTree& t, const std::vector<Rational>& f) {
    if (f.size() != t.base.size()) throw Error(Errc::InvalidDistribution, "wrong number of values");
    if (f[static_cast<std::size_t>(t.root)] != 1) throw Error(Errc::InvalidDistribution, "value at the root must be 1");
    std::vector<Rational> m(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        m[x] = f[x] - successor_sum(t, f, static_cast<int>(x));
        if (m[x] < 0) throw Error(Errc::InvalidDistribution, "successor values exceed F(" + t.base.name(static_cast<int>(x)) + ")");
    }
    return Measure(share(t.base), std::move(m));
}

inline bool df_leq(const DistFn& f1, const DistFn& f2) {
    if (!(f1.tree == f2.tree)) throw Error(Errc::TreeMismatch, "distribution functions on different rooted trees");
    for (std::size_t x = 0; x < f1.value.size(); ++x) {
        switch (f1.tree.kind[x]) {
            case SectionKind::UpSet:
                if (f1.value[x] > f2.value[x]) return false;
                break;
            case SectionKind::DownSet:
                if (f1.value[x] < f2.value[x]) return false;
                break;
            case SectionKind::Whole:
                break;
        }
    }
    return true;
}

inline int default_root(const Poset& p) {
    ElementSet l = leaves(p);
    return l ? std::countr_zero(l) : 0;
}

// A measure between every lower and every upper measure.
inline Measure insert_middle(const std::vector<Measure>& lower, const std::vector<Measure>& upper) {
    if (lower.empty() || upper.empty()) throw Error(Errc::PreconditionFailed, "need at least one lower and one upper measure");
    PosetRef base = lower.front().base_ref();
    for (const auto& m : lower)
        if (!same_poset(m.base_ref(), base)) throw Error(Errc::BaseMismatch, "measures on different posets");
    for (const auto& m : upper)
        if (!same_poset(m.base_ref(), base)) throw Error(Errc::BaseMismatch, "measures on different posets");
    if (classify(*base).cls == TargetClass::B) throw Error(Errc::TargetInClassB, "middle measures need a target outside class B");
    for (const auto& a : lower)
        for (const auto& b : upper)
            if (!stochastically_leq(a, b).holds) throw Error(Errc::PreconditionFailed, "a lower measure is not below an upper measure");
    RootedTree t = rooted_tree(*base, default_root(*base));
    const std::size_t n = base->size();
    std::vector<DistFn> fa, fb;
    for (const auto& m : lower) fa.push_back(distribution_function(t, m));
    for (const auto& m : upper) fb.push_back(distribution_function(t, m));
    std::vector<Rational> theta(n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto& src = t.kind[x] == SectionKind::DownSet ? fb : fa;
        theta[x] = src.front().value[x];
        for (const auto& f : src)
            if (f.value[x] > theta[x]) theta[x] = f.value[x];
    }
    std::vector<Rational> f0(n);
    for (int x : t.bottom_up()) {
        Rational s = successor_sum(t, f0, x);
        f0[static_cast<std::size_t>(x)] = std::max(theta[static_cast<std::size_t>(x)], s);
    }
    Measure mid = measure_from_distribution(t, f0);
    for (const auto& a : lower)
        if (!stochastically_leq(a, mid).holds) throw Error(Errc::Internal, "middle measure misses a lower bound");
    for (const auto& b : upper)
        if (!stochastically_leq(mid, b).holds) throw Error(Errc::Internal, "middle measure misses an upper bound");
    return mid;
}

}  // namespace monoeq
