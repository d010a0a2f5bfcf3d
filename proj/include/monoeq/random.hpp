#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "monoeq/coupling.hpp"

namespace monoeq {

using Rng = std::mt19937_64;

// Modulo reduction keeps streams identical across standard libraries.
inline int uniform_int(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

inline int pick_member(Rng& rng, ElementSet s) {
    std::vector<int> m = members(s);
    return m[static_cast<std::size_t>(uniform_int(rng, static_cast<int>(m.size())))];
}

// Small integer weights on a random subset of `allowed`.
inline std::vector<Rational> random_weights(Rng& rng, std::size_t n, ElementSet allowed, int max_support, int max_weight) {
    std::vector<Rational> w(n, 0);
    int k = 1 + uniform_int(rng, std::min(max_support, set_size(allowed)));
    ElementSet left = allowed;
    int total = 0;
    for (int i = 0; i < k; ++i) {
        int e = pick_member(rng, left);
        left &= ~bit(e);
        int v = 1 + uniform_int(rng, max_weight);
        w[static_cast<std::size_t>(e)] = v;
        total += v;
    }
    for (auto& v : w) v /= total;
    return w;
}

inline Measure random_measure(const PosetRef& s, Rng& rng, int max_support = 4, int max_weight = 4) {
    return Measure(s, random_weights(rng, s->size(), s->all(), max_support, max_weight));
}

// Random upward kernel; rows stay put half of the time.
inline UpwardKernel random_upward_kernel(const PosetRef& s, Rng& rng) {
    UpwardKernel k{s, std::vector<std::vector<Rational>>(s->size(), std::vector<Rational>(s->size(), 0))};
    for (std::size_t x = 0; x < s->size(); ++x) {
        if (uniform_int(rng, 2) == 0)
            k.k[x][x] = 1;
        else
            k.k[x] = random_weights(rng, s->size(), s->up(static_cast<int>(x)), 2, 3);
    }
    return k;
}

inline Measure random_above(const Measure& p, Rng& rng) { return random_upward_kernel(p.base_ref(), rng).apply(p); }

inline Measure random_below(const Measure& p, Rng& rng) {
    PosetRef d = share(dual(p.base()));
    return random_upward_kernel(d, rng).apply(p.rebased(d)).rebased(p.base_ref());
}

namespace detail {

// Mixture of a few random monotone maps; always stochastically monotone.
inline std::optional<MeasureSystem> random_realizable_system(const PosetRef& a, const PosetRef& s, Rng& rng) {
    std::vector<int> order = a->linear_extension();
    std::vector<std::vector<Rational>> mass(a->size(), std::vector<Rational>(s->size(), 0));
    int pieces = 1 + uniform_int(rng, 3);
    Rational w(1, pieces);
    for (int p = 0; p < pieces; ++p) {
        MonotoneMap x(a->size(), -1);
        bool ok = false;
        for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
            ok = true;
            for (int al : order) {
                ElementSet cand = s->all();
                for (int be : members(a->down(al) & ~bit(al))) cand &= s->up(x[static_cast<std::size_t>(be)]);
                if (!cand) {
                    ok = false;
                    break;
                }
                x[static_cast<std::size_t>(al)] = pick_member(rng, cand);
            }
        }
        if (!ok) return std::nullopt;
        for (std::size_t al = 0; al < a->size(); ++al) mass[al][static_cast<std::size_t>(x[al])] += w;
    }
    std::vector<Measure> ms;
    for (auto& m : mass) ms.push_back(Measure(s, std::move(m)));
    return MeasureSystem(a, s, std::move(ms));
}

}  // namespace detail

// Random stochastically monotone system. Measures are drawn along a linear
// extension; an element with lower covers receives a random upward push of
// one of them, kept only if it dominates all of them.
inline MeasureSystem random_sm_system(const PosetRef& a, const PosetRef& s, Rng& rng) {
    std::vector<int> order = a->linear_extension();
    for (int restart = 0; restart < 20; ++restart) {
        std::vector<Measure> ms(a->size());
        bool ok = true;
        for (int al : order) {
            std::vector<int> lows = members(a->lower_covers(al));
            if (lows.empty()) {
                ms[static_cast<std::size_t>(al)] = random_measure(s, rng);
                continue;
            }
            bool placed = false;
            for (int attempt = 0; attempt < 30 && !placed; ++attempt) {
                int from = lows[static_cast<std::size_t>(uniform_int(rng, static_cast<int>(lows.size())))];
                Measure cand = random_above(ms[static_cast<std::size_t>(from)], rng);
                placed = true;
                for (int b : lows)
                    if (!stochastically_leq(ms[static_cast<std::size_t>(b)], cand).holds) {
                        placed = false;
                        break;
                    }
                if (placed) ms[static_cast<std::size_t>(al)] = cand;
            }
            if (!placed) {
                ok = false;
                break;
            }
        }
        if (ok) return MeasureSystem(a, s, std::move(ms));
    }
    for (int attempt = 0; attempt < 20; ++attempt)
        if (auto sys = detail::random_realizable_system(a, s, rng)) return *sys;
    return MeasureSystem(a, s, std::vector<Measure>(a->size(), Measure::point(s, 0)));
}

// Pair (p1, p2) with p1 below p2 about half of the time.
inline std::pair<Measure, Measure> random_measure_pair(const PosetRef& s, Rng& rng) {
    Measure p1 = random_measure(s, rng);
    if (uniform_int(rng, 2) == 0) return {p1, random_above(p1, rng)};
    return {p1, random_measure(s, rng)};
}

}  // namespace monoeq
