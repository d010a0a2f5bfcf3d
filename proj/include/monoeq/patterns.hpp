#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monoeq/poset.hpp"

namespace monoeq::shapes {

using Covers = std::vector<std::pair<std::string, std::string>>;

inline Poset chain(int n, const std::string& prefix = "c") {
    std::vector<std::string> el;
    Covers cov;
    for (int i = 0; i < n; ++i) {
        el.push_back(prefix + std::to_string(i));
        if (i > 0) cov.emplace_back(el[static_cast<std::size_t>(i - 1)], el.back());
    }
    return Poset::from_cover_relations(el, cov);
}

inline Poset antichain(int n, const std::string& prefix = "e") {
    std::vector<std::string> el;
    for (int i = 0; i < n; ++i) el.push_back(prefix + std::to_string(i));
    return Poset::from_cover_relations(el, {});
}

// x < y, z < w
inline Poset diamond(const std::string& bot = "x", const std::string& l = "y", const std::string& r = "z",
                     const std::string& top = "w") {
    return Poset::from_cover_relations({bot, l, r, top}, {{bot, l}, {bot, r}, {l, top}, {r, top}});
}

// Bottoms lo_i, tops hi_i with lo_i < hi_i and lo_i < hi_{i-1 mod k}.
inline Poset crown(int k, const std::string& lo = "x", const std::string& hi = "y") {
    if (k < 2) throw Error(Errc::BadParameter, "crown needs k >= 2");
    std::vector<std::string> el;
    Covers cov;
    for (int i = 0; i < k; ++i) el.push_back(lo + std::to_string(i));
    for (int i = 0; i < k; ++i) el.push_back(hi + std::to_string(i));
    for (int i = 0; i < k; ++i) {
        cov.emplace_back(lo + std::to_string(i), hi + std::to_string(i));
        cov.emplace_back(lo + std::to_string(i), hi + std::to_string((i + k - 1) % k));
    }
    return Poset::from_cover_relations(el, cov);
}

inline Poset bowtie(const std::string& lo = "a", const std::string& hi = "b") { return crown(2, lo, hi); }

// x, y < z < w
inline Poset y_poset() {
    return Poset::from_cover_relations({"x", "y", "z", "w"}, {{"x", "z"}, {"y", "z"}, {"z", "w"}});
}

// x below three pairwise incomparable elements
inline Poset w_poset() {
    return Poset::from_cover_relations({"x", "y", "z", "w"}, {{"x", "y"}, {"x", "z"}, {"x", "w"}});
}

// Two bowties sharing lo2 and hi2.
inline Poset double_bowtie(const std::string& lo = "a", const std::string& hi = "b") {
    auto a = [&](int i) { return lo + std::to_string(i); };
    auto b = [&](int i) { return hi + std::to_string(i); };
    return Poset::from_cover_relations(
        {a(1), a(2), a(3), b(1), b(2), b(3)},
        {{a(1), b(1)}, {a(1), b(2)}, {a(2), b(1)}, {a(2), b(2)}, {a(2), b(3)}, {a(3), b(2)}, {a(3), b(3)}});
}

// Every lo_i below every hi_j.
inline Poset bipartite(int m, int n, const std::string& lo = "a", const std::string& hi = "b") {
    std::vector<std::string> el;
    Covers cov;
    for (int i = 1; i <= m; ++i) el.push_back(lo + std::to_string(i));
    for (int j = 1; j <= n; ++j) el.push_back(hi + std::to_string(j));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) cov.emplace_back(lo + std::to_string(i), hi + std::to_string(j));
    return Poset::from_cover_relations(el, cov);
}

// Path z0 - z1 - ... - z{n-1} whose cover edges alternate in direction, z0 < z1.
inline Poset zigzag(int n, const std::string& prefix = "z") {
    std::vector<std::string> el;
    Covers cov;
    for (int i = 0; i < n; ++i) el.push_back(prefix + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) {
        if (i % 2 == 0)
            cov.emplace_back(el[static_cast<std::size_t>(i)], el[static_cast<std::size_t>(i + 1)]);
        else
            cov.emplace_back(el[static_cast<std::size_t>(i + 1)], el[static_cast<std::size_t>(i)]);
    }
    return Poset::from_cover_relations(el, cov);
}

// Acyclic tree x1, x2 < y < z1, z2; {x1, x2, z1, z2} induces a bowtie.
inline Poset bowtie_tree() {
    return Poset::from_cover_relations({"x1", "x2", "y", "z1", "z2"},
                                       {{"x1", "y"}, {"x2", "y"}, {"y", "z1"}, {"y", "z2"}});
}

// Tree with an induced Y on {q, r, p, t}, no bowtie and no element with two lower covers.
inline Poset y_tree() {
    return Poset::from_cover_relations(
        {"q", "r", "p", "t", "x", "y", "z", "tau"},
        {{"q", "tau"}, {"q", "r"}, {"r", "p"}, {"r", "t"}, {"p", "x"}, {"p", "y"}, {"x", "z"}});
}

// Induced cycle a0 < c < b0 > a1 < b1 > a0 of height 3.
inline Poset tall_cycle() {
    return Poset::from_cover_relations({"a0", "a1", "b0", "b1", "c"},
                                       {{"a0", "c"}, {"c", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}});
}

}  // namespace monoeq::shapes
