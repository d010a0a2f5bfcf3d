#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "monoeq/lp.hpp"
#include "monoeq/measures.hpp"

namespace monoeq {

inline constexpr std::uint64_t kDefaultDeltaCap = 10'000'000;

// ---------------------------------------------------------------- monotone maps

using MonotoneMap = std::vector<int>;  // value per index element, in index order

struct MonotoneSet {
    PosetRef index, target;
    std::vector<MonotoneMap> maps;  // lexicographic
};

inline bool is_monotone_map(const Poset& a, const Poset& s, const MonotoneMap& x) {
    for (auto [i, j] : a.cover_pairs())
        if (!s.leq(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)])) return false;
    return true;
}

// Visits monotone maps with x_alpha in allowed[alpha], lexicographically;
// visit returns false to stop.
inline void for_each_monotone(const Poset& a, const Poset& s, const std::vector<ElementSet>& allowed,
                              const std::function<bool(const MonotoneMap&)>& visit) {
    const std::size_t n = a.size();
    MonotoneMap x(n, -1);
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (!visit(x)) stop = true;
            return;
        }
        ElementSet cand = allowed[i];
        int ii = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j) {
            int xj = x[j];
            if (a.leq(static_cast<int>(j), ii)) cand &= s.up(xj);
            if (a.leq(ii, static_cast<int>(j))) cand &= s.down(xj);
        }
        for (int v : members(cand)) {
            x[i] = v;
            self(self, i + 1);
            if (stop) return;
        }
        x[i] = -1;
    };
    rec(rec, 0);
}

inline void check_cap(const std::vector<ElementSet>& allowed, std::uint64_t cap) {
    long double prod = 1;
    for (ElementSet s : allowed) prod *= static_cast<long double>(set_size(s));
    if (prod > static_cast<long double>(cap))
        throw Error(Errc::CapExceeded, "candidate maps exceed the cap of " + std::to_string(cap));
}

inline MonotoneSet monotone_elements(const PosetRef& a, const PosetRef& s, std::uint64_t cap = kDefaultDeltaCap) {
    std::vector<ElementSet> allowed(a->size(), s->all());
    check_cap(allowed, cap);
    MonotoneSet d{a, s, {}};
    for_each_monotone(*a, *s, allowed, [&](const MonotoneMap& x) {
        d.maps.push_back(x);
        return true;
    });
    return d;
}

// Largest sum_alpha f[alpha][x_alpha] over monotone maps, by branch and bound.
inline Rational max_monotone_value(const Poset& a, const Poset& s, const std::vector<std::vector<Rational>>& f) {
    const std::size_t n = a.size();
    std::vector<Rational> best_tail(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        Rational m = f[i][0];
        for (const auto& v : f[i]) m = std::max(m, v);
        best_tail[i] = best_tail[i + 1] + m;
    }
    MonotoneMap x(n, -1);
    std::optional<Rational> best;
    auto rec = [&](auto&& self, std::size_t i, const Rational& acc) -> void {
        if (i == n) {
            if (!best || acc > *best) best = acc;
            return;
        }
        if (best && acc + best_tail[i] <= *best) return;
        ElementSet cand = s.all();
        int ii = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j) {
            if (a.leq(static_cast<int>(j), ii)) cand &= s.up(x[j]);
            if (a.leq(ii, static_cast<int>(j))) cand &= s.down(x[j]);
        }
        std::vector<int> order = members(cand);
        std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return f[i][static_cast<std::size_t>(p)] > f[i][static_cast<std::size_t>(q)]; });
        for (int v : order) {
            x[i] = v;
            self(self, i + 1, acc + f[i][static_cast<std::size_t>(v)]);
        }
    };
    rec(rec, 0, Rational(0));
    return *best;
}

// ---------------------------------------------------------------- kernels

struct UpwardKernel {
    PosetRef base;
    std::vector<std::vector<Rational>> k;  // k[x][y], nonzero only for x <= y

    Measure apply(const Measure& p) const {
        std::vector<Rational> m(base->size(), 0);
        for (std::size_t x = 0; x < k.size(); ++x)
            if (p[static_cast<int>(x)] != 0)
                for (std::size_t y = 0; y < k.size(); ++y) m[y] += p[static_cast<int>(x)] * k[x][y];
        return Measure(base, std::move(m));
    }
    bool is_upward() const {
        for (std::size_t x = 0; x < k.size(); ++x) {
            Rational row = 0;
            for (std::size_t y = 0; y < k.size(); ++y) {
                if (k[x][y] < 0) return false;
                if (k[x][y] != 0 && !base->leq(static_cast<int>(x), static_cast<int>(y))) return false;
                row += k[x][y];
            }
            if (row != 1) return false;
        }
        return true;
    }
};

class NotDominatedError : public Error {
public:
    NotDominatedError(ElementSet w, const std::string& what) : Error(Errc::NotDominated, what), witness_(w) {}
    ElementSet witness() const { return witness_; }

private:
    ElementSet witness_;
};

namespace detail {

// Edmonds-Karp on a dense integer network.
struct FlowNet {
    int n;
    std::vector<std::vector<mpz_class>> cap, flow;
    explicit FlowNet(int nodes)
        : n(nodes),
          cap(static_cast<std::size_t>(nodes), std::vector<mpz_class>(static_cast<std::size_t>(nodes), 0)),
          flow(cap) {}
    mpz_class residual(int u, int v) const {
        return cap[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] - flow[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] +
               flow[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
    }
    std::vector<int> bfs(int s) const {
        std::vector<int> prev(static_cast<std::size_t>(n), -1);
        prev[static_cast<std::size_t>(s)] = s;
        std::vector<int> q{s};
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int v = 0; v < n; ++v)
                if (prev[static_cast<std::size_t>(v)] < 0 && residual(q[i], v) > 0) {
                    prev[static_cast<std::size_t>(v)] = q[i];
                    q.push_back(v);
                }
        return prev;
    }
    mpz_class max_flow(int s, int t) {
        mpz_class total = 0;
        for (;;) {
            std::vector<int> prev = bfs(s);
            if (prev[static_cast<std::size_t>(t)] < 0) return total;
            mpz_class push = -1;
            for (int v = t; v != s; v = prev[static_cast<std::size_t>(v)]) {
                mpz_class r = residual(prev[static_cast<std::size_t>(v)], v);
                if (push < 0 || r < push) push = r;
            }
            for (int v = t; v != s; v = prev[static_cast<std::size_t>(v)]) {
                int u = prev[static_cast<std::size_t>(v)];
                // cancel reverse flow first
                auto& back = flow[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
                mpz_class c = std::min(back, push);
                back -= c;
                flow[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += push - c;
            }
            total += push;
        }
    }
};

}  // namespace detail

// Upward kernel carrying p1 onto p2 when p1 is stochastically below p2.
inline UpwardKernel strassen_pair(const Measure& p1, const Measure& p2) {
    if (!same_poset(p1.base_ref(), p2.base_ref())) throw Error(Errc::BaseMismatch, "measures on different posets");
    const Poset& s = p1.base();
    const int n = static_cast<int>(s.size());
    mpz_class scale = 1;
    for (int i = 0; i < n; ++i) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p1[i].get_den_mpz_t());
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p2[i].get_den_mpz_t());
    }
    detail::FlowNet net(2 * n + 2);
    const int src = 2 * n, snk = 2 * n + 1;
    mpz_class inf = scale + 1;
    for (int i = 0; i < n; ++i) {
        Rational a = p1[i] * scale, b = p2[i] * scale;
        net.cap[static_cast<std::size_t>(src)][static_cast<std::size_t>(i)] = a.get_num();
        net.cap[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(snk)] = b.get_num();
        for (int j : members(s.up(i))) net.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)] = inf;
    }
    mpz_class f = net.max_flow(src, snk);
    if (f != scale) {
        std::vector<int> prev = net.bfs(src);
        ElementSet reach = 0;
        for (int i = 0; i < n; ++i)
            if (prev[static_cast<std::size_t>(i)] >= 0) reach |= bit(i);
        ElementSet u = s.up_closure(reach);
        throw NotDominatedError(u, "first measure exceeds the second on up-set " + format_set(s, u));
    }
    UpwardKernel k{p1.base_ref(), std::vector<std::vector<Rational>>(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), 0))};
    for (int i = 0; i < n; ++i) {
        if (p1[i] == 0) {
            k.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
            continue;
        }
        Rational out = p1[i] * scale;
        for (int j = 0; j < n; ++j) {
            const mpz_class& fl = net.flow[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
            if (fl != 0) k.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(fl) / out;
        }
    }
    if (!k.is_upward() || !(k.apply(p1) == p2)) throw Error(Errc::Internal, "max-flow kernel failed verification");
    return k;
}

// ---------------------------------------------------------------- couplings

struct CouplingPoint {
    MonotoneMap values;
    Rational mass;
};

// Probability measure on the monotone maps from `index` to `target`.
struct Coupling {
    PosetRef index, target;
    std::vector<CouplingPoint> points;  // positive masses, lexicographic, distinct

    static Coupling make(PosetRef a, PosetRef s, std::vector<CouplingPoint> pts) {
        std::map<MonotoneMap, Rational> acc;
        for (auto& p : pts) {
            if (p.mass < 0) throw Error(Errc::PreconditionFailed, "negative coupling mass");
            if (p.mass == 0) continue;
            if (p.values.size() != a->size() || !is_monotone_map(*a, *s, p.values))
                throw Error(Errc::PreconditionFailed, "coupling point is not a monotone map");
            acc[p.values] += p.mass;
        }
        Coupling c{std::move(a), std::move(s), {}};
        Rational total = 0;
        for (auto& [v, m] : acc) {
            total += m;
            c.points.push_back({v, m});
        }
        if (total != 1) throw Error(Errc::PreconditionFailed, "coupling masses sum to " + to_string(total));
        return c;
    }

    Measure marginal(int alpha) const {
        std::vector<Rational> m(target->size(), 0);
        for (const auto& p : points) m[static_cast<std::size_t>(p.values[static_cast<std::size_t>(alpha)])] += p.mass;
        return Measure(target, std::move(m));
    }

    bool realizes(const MeasureSystem& sys) const {
        if (!same_poset(index, sys.index) || !same_poset(target, sys.target)) return false;
        for (std::size_t a = 0; a < index->size(); ++a)
            if (!(marginal(static_cast<int>(a)) == sys[static_cast<int>(a)])) return false;
        return true;
    }
};

struct InfeasibilityCertificate {
    PosetRef index, target;
    std::vector<std::vector<Rational>> f;  // f[alpha][xi]
    Rational lhs, sup;                     // lhs > sup
};

struct CertificateValue {
    Rational lhs, sup;
};

inline Rational certificate_lhs(const MeasureSystem& sys, const std::vector<std::vector<Rational>>& f) {
    Rational lhs = 0;
    for (std::size_t a = 0; a < sys.index->size(); ++a)
        for (std::size_t x = 0; x < sys.target->size(); ++x) lhs += sys[static_cast<int>(a)][static_cast<int>(x)] * f[a][x];
    return lhs;
}

inline CertificateValue certificate_value(const MeasureSystem& sys, const std::vector<std::vector<Rational>>& f,
                                          const MonotoneSet& delta) {
    CertificateValue v{certificate_lhs(sys, f), 0};
    bool first = true;
    for (const auto& x : delta.maps) {
        Rational s = 0;
        for (std::size_t a = 0; a < x.size(); ++a) s += f[a][static_cast<std::size_t>(x[a])];
        if (first || s > v.sup) v.sup = s;
        first = false;
    }
    return v;
}

inline CertificateValue certificate_value(const MeasureSystem& sys, const std::vector<std::vector<Rational>>& f) {
    return {certificate_lhs(sys, f), max_monotone_value(*sys.index, *sys.target, f)};
}

// Indicator functionals f_alpha = 1_{U_alpha}.
inline std::vector<std::vector<Rational>> indicator_family(const MeasureSystem& sys, const std::vector<ElementSet>& sets) {
    std::vector<std::vector<Rational>> f(sys.index->size(), std::vector<Rational>(sys.target->size(), 0));
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (int x : members(sets[a])) f[a][static_cast<std::size_t>(x)] = 1;
    return f;
}

using Realization = std::variant<Coupling, InfeasibilityCertificate>;

struct RealizeStats {
    std::size_t rows = 0, columns = 0;
    long pivots = 0;
};

// Decides realizability by an exact LP over the monotone maps that stay in
// the supports of the given measures.
inline Realization realize(const MeasureSystem& sys, std::uint64_t cap = kDefaultDeltaCap, RealizeStats* stats = nullptr) {
    const Poset& a = *sys.index;
    const Poset& s = *sys.target;
    if (a.empty()) throw Error(Errc::EmptyPoset, "empty index poset");
    for (const auto& m : sys.measures)
        if (!same_poset(m.base_ref(), sys.target)) throw Error(Errc::DegenerateSystem, "measure not supported on the target");
    const std::size_t na = a.size(), ns = s.size();
    std::vector<ElementSet> supp(na);
    std::vector<std::vector<int>> row_of(na, std::vector<int>(ns, -1));
    std::vector<Rational> b;
    for (std::size_t i = 0; i < na; ++i) {
        supp[i] = sys[static_cast<int>(i)].support();
        for (int x : members(supp[i])) {
            row_of[i][static_cast<std::size_t>(x)] = static_cast<int>(b.size());
            b.push_back(sys[static_cast<int>(i)][x]);
        }
    }
    check_cap(supp, cap);
    std::vector<MonotoneMap> maps;
    std::vector<lp::SparseColumn> cols;
    for_each_monotone(a, s, supp, [&](const MonotoneMap& x) {
        lp::SparseColumn c;
        for (std::size_t i = 0; i < na; ++i) c.entries.emplace_back(row_of[i][static_cast<std::size_t>(x[i])], Rational(1));
        cols.push_back(std::move(c));
        maps.push_back(x);
        return true;
    });
    lp::Feasibility res = lp::solve_feasibility(static_cast<int>(b.size()), cols, b);
    if (stats) *stats = {b.size(), cols.size(), res.pivots};
    if (res.feasible) {
        std::vector<CouplingPoint> pts;
        for (std::size_t j = 0; j < maps.size(); ++j)
            if (res.x[j] != 0) pts.push_back({maps[j], res.x[j]});
        Coupling c = Coupling::make(sys.index, sys.target, std::move(pts));
        if (!c.realizes(sys)) throw Error(Errc::Internal, "LP coupling has wrong marginals");
        return c;
    }
    InfeasibilityCertificate cert{sys.index, sys.target, std::vector<std::vector<Rational>>(na, std::vector<Rational>(ns, 0)), 0, 0};
    Rational big = 1;
    for (std::size_t i = 0; i < na; ++i) {
        Rational m = 0;
        for (int x : members(supp[i])) m = std::max(m, Rational(abs(res.y[static_cast<std::size_t>(row_of[i][static_cast<std::size_t>(x)])])));
        big += m;
    }
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t x = 0; x < ns; ++x) {
            int r = row_of[i][x];
            cert.f[i][x] = r >= 0 ? res.y[static_cast<std::size_t>(r)] : Rational(-big);
        }
    CertificateValue v = certificate_value(sys, cert.f);
    cert.lhs = v.lhs;
    cert.sup = v.sup;
    if (!(cert.lhs > cert.sup)) throw Error(Errc::Internal, "dual certificate failed verification");
    return cert;
}

inline bool is_realizable(const MeasureSystem& sys, std::uint64_t cap = kDefaultDeltaCap) {
    return std::holds_alternative<Coupling>(realize(sys, cap));
}

// ---------------------------------------------------------------- constructive couplers

inline void require_monotone(const MeasureSystem& sys) {
    auto chk = is_stochastically_monotone(sys);
    if (!chk.ok)
        throw Error(Errc::NotStochasticallyMonotone,
                    "P(" + sys.index->name(chk.lower) + ") is not below P(" + sys.index->name(chk.upper) + ") on " +
                        format_set(*sys.target, chk.witness));
}

inline Coupling realize_acyclic(const MeasureSystem& sys) {
    const Poset& a = *sys.index;
    if (a.empty()) throw Error(Errc::EmptyPoset, "empty index poset");
    if (!is_acyclic(a).acyclic) throw Error(Errc::NotAcyclic, "index poset has a cycle");
    require_monotone(sys);
    const std::size_t n = a.size();
    // Peel leaves (smallest first); isolated vertices start new components.
    ElementSet left = a.all();
    std::vector<std::pair<int, int>> peel;  // (element, neighbour or -1)
    while (left) {
        int pick = -1, nb = -1;
        for (int v : members(left)) {
            ElementSet nbs = a.neighbors(v) & left;
            if (set_size(nbs) == 1) {
                pick = v;
                nb = std::countr_zero(nbs);
                break;
            }
        }
        if (pick < 0) pick = std::countr_zero(left);
        peel.emplace_back(pick, nb);
        left &= ~bit(pick);
    }
    PosetRef dual_s = share(dual(*sys.target));
    std::vector<CouplingPoint> pts{{MonotoneMap(n, -1), Rational(1)}};
    for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
        auto [v, nb] = *it;
        const Measure& pv = sys[v];
        std::vector<CouplingPoint> next;
        if (nb < 0) {
            for (auto& p : pts)
                for (int x : members(pv.support())) {
                    CouplingPoint q = p;
                    q.values[static_cast<std::size_t>(v)] = x;
                    q.mass *= pv[x];
                    next.push_back(std::move(q));
                }
        } else {
            UpwardKernel k = a.less(nb, v) ? strassen_pair(sys[nb], pv)
                                           : strassen_pair(sys[nb].rebased(dual_s), pv.rebased(dual_s));
            for (auto& p : pts) {
                int xb = p.values[static_cast<std::size_t>(nb)];
                for (std::size_t y = 0; y < sys.target->size(); ++y) {
                    const Rational& w = k.k[static_cast<std::size_t>(xb)][y];
                    if (w == 0) continue;
                    CouplingPoint q = p;
                    q.values[static_cast<std::size_t>(v)] = static_cast<int>(y);
                    q.mass *= w;
                    next.push_back(std::move(q));
                }
            }
        }
        pts = std::move(next);
    }
    Coupling c = Coupling::make(sys.index, sys.target, std::move(pts));
    if (!c.realizes(sys)) throw Error(Errc::Internal, "tree coupling has wrong marginals");
    return c;
}

// Common-uniform inverse transform along the path order of a class-Z target.
inline Coupling realize_class_z(const MeasureSystem& sys) {
    const Poset& s = *sys.target;
    if (s.empty() || classify(s).cls != TargetClass::Z) throw Error(Errc::NotClassZ, "target is not a path");
    require_monotone(sys);
    std::vector<int> order;  // x_1 .. x_n, root last
    {
        int root = default_root(s);
        ElementSet seen = bit(root);
        order.push_back(root);
        for (;;) {
            ElementSet nx = s.neighbors(order.back()) & ~seen;
            if (!nx) break;
            order.push_back(std::countr_zero(nx));
            seen |= nx;
        }
        std::reverse(order.begin(), order.end());
    }
    const std::size_t na = sys.index->size();
    std::vector<std::vector<Rational>> cdf(na);
    std::vector<Rational> cuts{0, 1};
    for (std::size_t i = 0; i < na; ++i) {
        Rational acc = 0;
        for (int x : order) {
            acc += sys[static_cast<int>(i)][x];
            cdf[i].push_back(acc);
            cuts.push_back(acc);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<CouplingPoint> pts;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const Rational& u = cuts[c];
        MonotoneMap x(na);
        for (std::size_t i = 0; i < na; ++i) {
            std::size_t k = 0;
            while (!(u < cdf[i][k])) ++k;
            x[i] = order[k];
        }
        pts.push_back({x, cuts[c + 1] - cuts[c]});
    }
    Coupling q = Coupling::make(sys.index, sys.target, std::move(pts));
    if (!q.realizes(sys)) throw Error(Errc::Internal, "path coupling has wrong marginals");
    return q;
}

// Q(x', xi, x'') = Q'(x', xi) Q''(xi, x'') / P_shared(xi)
inline Coupling glue(const Coupling& lo, const Coupling& hi, const std::string& shared) {
    if (!same_poset(lo.target, hi.target)) throw Error(Errc::BaseMismatch, "couplings on different targets");
    Poset w = weld(*lo.index, *hi.index, shared);
    PosetRef wr = share(w);
    int cl = lo.index->index(shared), ch = hi.index->index(shared);
    Measure ml = lo.marginal(cl), mh = hi.marginal(ch);
    if (!(ml == mh)) throw Error(Errc::PreconditionFailed, "couplings disagree on the shared element");
    std::vector<int> map_lo, map_hi;
    for (const auto& nm : lo.index->names()) map_lo.push_back(w.index(nm));
    for (const auto& nm : hi.index->names()) map_hi.push_back(w.index(nm));
    std::map<int, std::vector<const CouplingPoint*>> by_mid;
    for (const auto& p : hi.points) by_mid[p.values[static_cast<std::size_t>(ch)]].push_back(&p);
    std::vector<CouplingPoint> pts;
    for (const auto& p : lo.points) {
        int xi = p.values[static_cast<std::size_t>(cl)];
        for (const CouplingPoint* q : by_mid[xi]) {
            CouplingPoint r{MonotoneMap(w.size(), -1), p.mass * q->mass / ml[xi]};
            for (std::size_t i = 0; i < map_lo.size(); ++i) r.values[static_cast<std::size_t>(map_lo[i])] = p.values[i];
            for (std::size_t i = 0; i < map_hi.size(); ++i) r.values[static_cast<std::size_t>(map_hi[i])] = q->values[i];
            pts.push_back(std::move(r));
        }
    }
    return Coupling::make(wr, lo.target, std::move(pts));
}

// Marginal of a coupling on an induced subposet of its index.
inline Coupling project(const Coupling& q, const PosetRef& sub) {
    std::vector<int> from;
    for (const auto& nm : sub->names()) from.push_back(q.index->index(nm));
    std::vector<CouplingPoint> pts;
    for (const auto& p : q.points) {
        MonotoneMap v;
        for (int i : from) v.push_back(p.values[static_cast<std::size_t>(i)]);
        pts.push_back({v, p.mass});
    }
    return Coupling::make(sub, q.target, std::move(pts));
}

namespace detail {
inline Coupling realize_enlargeable_rec(const MeasureSystem& sys, NameSource& names) {
    const Poset& a = *sys.index;
    if (is_acyclic(a).acyclic) return realize_acyclic(sys);
    BicliqueSplit sp = split_at_biclique(a, names.next());
    std::vector<Measure> lower, upper;
    for (int i : members(sp.lower)) lower.push_back(sys[i]);
    for (int i : members(sp.upper)) upper.push_back(sys[i]);
    Measure mid = insert_middle(lower, upper);
    auto sub = [&](const Poset& part) {
        PosetRef pr = share(part);
        std::vector<Measure> ms;
        for (const auto& nm : part.names()) ms.push_back(nm == sp.mid ? mid : sys.at(nm));
        return MeasureSystem(pr, sys.target, std::move(ms));
    };
    Coupling lo = realize_enlargeable_rec(sub(sp.lower_part), names);
    Coupling hi = realize_enlargeable_rec(sub(sp.upper_part), names);
    return project(glue(lo, hi, sp.mid), sys.index);
}
}  // namespace detail

// Coupling for an enlargeable index poset and a target outside class B.
inline Coupling realize_enlargeable(const MeasureSystem& sys) {
    const Poset& a = *sys.index;
    if (a.empty() || sys.target->empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (classify(*sys.target).cls == TargetClass::B) throw Error(Errc::TargetInClassB, "target is in class B");
    if (auto o = check_enlargeable(a))
        throw NotEnlargeableError(*o, std::string("index poset contains an induced ") + obstruction_name(o->kind));
    require_monotone(sys);
    NameSource names(a);
    Coupling c = detail::realize_enlargeable_rec(sys, names);
    if (!c.realizes(sys)) throw Error(Errc::Internal, "glued coupling has wrong marginals");
    return c;
}

}  // namespace monoeq
