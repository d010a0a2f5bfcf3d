#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoeq/error.hpp"

namespace monoeq {

// Subsets of a poset's ground set, bit i = element with index i.
using ElementSet = std::uint64_t;

inline constexpr std::size_t kMaxElements = 64;
inline constexpr std::size_t kMaxUpSetElements = 22;

inline constexpr ElementSet bit(int i) { return ElementSet{1} << i; }
inline constexpr bool contains(ElementSet s, int i) { return ((s >> i) & 1u) != 0; }
inline int set_size(ElementSet s) { return std::popcount(s); }
inline ElementSet full_set(std::size_t n) { return n >= 64 ? ~ElementSet{0} : (bit(static_cast<int>(n)) - 1); }

inline std::vector<int> members(ElementSet s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(set_size(s)));
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

// Orders sets by size, then by their sorted member lists.
inline bool set_order_less(ElementSet a, ElementSet b) {
    int ca = set_size(a), cb = set_size(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    return contains(a, std::countr_zero(a ^ b));
}

// Finite poset on string identifiers. Elements are indexed in lexicographic
// order of their identifiers; every iteration order in the library derives
// from that indexing.
class Poset {
public:
    Poset() : cache_(std::make_shared<Cache>()) {}

    static Poset from_cover_relations(const std::vector<std::string>& elements,
                                      const std::vector<std::pair<std::string, std::string>>& covers) {
        return from_pairs(elements, covers);
    }

    // Pairs (a, b) meaning a < b; the reflexive transitive closure is taken.
    static Poset from_pairs(const std::vector<std::string>& elements,
                            const std::vector<std::pair<std::string, std::string>>& less) {
        if (elements.size() > kMaxElements)
            throw Error(Errc::TooLarge, "at most 64 elements are supported");
        std::map<std::string, int> idx;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].empty()) throw Error(Errc::ParseError, "empty identifier");
            if (!idx.emplace(elements[i], static_cast<int>(i)).second)
                throw Error(Errc::DuplicateElement, "duplicate element '" + elements[i] + "'");
        }
        std::vector<ElementSet> up(elements.size(), 0);
        for (const auto& [a, b] : less) {
            auto ia = idx.find(a);
            auto ib = idx.find(b);
            if (ia == idx.end()) throw Error(Errc::UnknownElement, "unknown element '" + a + "'");
            if (ib == idx.end()) throw Error(Errc::UnknownElement, "unknown element '" + b + "'");
            if (ia->second == ib->second)
                throw Error(Errc::CycleInRelation, "relation " + a + "<" + a + " is not strict");
            up[static_cast<std::size_t>(ia->second)] |= bit(ib->second);
        }
        return from_up_masks(elements, std::move(up));
    }

    // up[i] lists elements above names[i]; closed and validated here.
    static Poset from_up_masks(const std::vector<std::string>& names, std::vector<ElementSet> up) {
        const std::size_t n = names.size();
        if (n > kMaxElements) throw Error(Errc::TooLarge, "at most 64 elements are supported");
        for (std::size_t i = 0; i < n; ++i) up[i] |= bit(static_cast<int>(i));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (contains(up[i], static_cast<int>(k))) up[i] |= up[k];
        for (std::size_t i = 0; i < n; ++i)
            for (int j : members(up[i] & ~bit(static_cast<int>(i))))
                if (contains(up[static_cast<std::size_t>(j)], static_cast<int>(i)))
                    throw Error(Errc::CycleInRelation,
                                "relation forces " + names[i] + " = " + names[static_cast<std::size_t>(j)]);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) { return names[a] < names[b]; });
        for (std::size_t i = 1; i < n; ++i)
            if (names[perm[i]] == names[perm[i - 1]])
                throw Error(Errc::DuplicateElement, "duplicate element '" + names[perm[i]] + "'");
        std::vector<int> where(n);
        for (std::size_t i = 0; i < n; ++i) where[perm[i]] = static_cast<int>(i);
        Poset p;
        p.names_.resize(n);
        p.up_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            p.names_[i] = names[perm[i]];
            for (int j : members(up[perm[i]])) p.up_[i] |= bit(where[j]);
        }
        p.finish();
        return p;
    }

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    ElementSet all() const { return full_set(size()); }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }

    std::optional<int> find(std::string_view id) const {
        auto it = std::lower_bound(names_.begin(), names_.end(), id);
        if (it == names_.end() || *it != id) return std::nullopt;
        return static_cast<int>(it - names_.begin());
    }
    int index(std::string_view id) const {
        auto i = find(id);
        if (!i) throw Error(Errc::UnknownElement, "unknown element '" + std::string(id) + "'");
        return *i;
    }
    ElementSet set_of(const std::vector<std::string>& ids) const {
        ElementSet s = 0;
        for (const auto& id : ids) s |= bit(index(id));
        return s;
    }
    std::vector<std::string> names_of(ElementSet s) const {
        std::vector<std::string> out;
        for (int i : members(s)) out.push_back(name(i));
        return out;
    }

    bool leq(int i, int j) const { return contains(up_[static_cast<std::size_t>(i)], j); }
    bool less(int i, int j) const { return i != j && leq(i, j); }
    bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
    bool covers(int lower, int upper) const { return contains(ucov_[static_cast<std::size_t>(lower)], upper); }

    ElementSet up(int i) const { return up_[static_cast<std::size_t>(i)]; }
    ElementSet down(int i) const { return down_[static_cast<std::size_t>(i)]; }
    ElementSet upper_covers(int i) const { return ucov_[static_cast<std::size_t>(i)]; }
    ElementSet lower_covers(int i) const { return lcov_[static_cast<std::size_t>(i)]; }
    ElementSet neighbors(int i) const { return ucov_[static_cast<std::size_t>(i)] | lcov_[static_cast<std::size_t>(i)]; }
    int degree(int i) const { return set_size(neighbors(i)); }

    // Cover pairs (lower, upper) sorted by index.
    const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }

    ElementSet up_closure(ElementSet s) const {
        ElementSet r = 0;
        for (int i : members(s)) r |= up(i);
        return r;
    }
    ElementSet down_closure(ElementSet s) const {
        ElementSet r = 0;
        for (int i : members(s)) r |= down(i);
        return r;
    }
    bool is_up_set(ElementSet s) const { return up_closure(s) == s; }
    bool is_down_set(ElementSet s) const { return down_closure(s) == s; }

    // All up-sets, ordered by size then member list. Cached per poset.
    const std::vector<ElementSet>& up_sets() const {
        if (size() > kMaxUpSetElements)
            throw Error(Errc::TooLarge, "up-set enumeration is limited to 22 elements");
        std::call_once(cache_->once, [this] { cache_->up_sets = compute_up_sets(); });
        return cache_->up_sets;
    }

    // Elements sorted so that x < y implies x appears first.
    std::vector<int> linear_extension() const {
        std::vector<int> order(size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return set_size(down(a)) < set_size(down(b)); });
        return order;
    }

    friend bool operator==(const Poset& a, const Poset& b) { return a.names_ == b.names_ && a.up_ == b.up_; }
    friend bool operator!=(const Poset& a, const Poset& b) { return !(a == b); }

private:
    struct Cache {
        std::once_flag once;
        std::vector<ElementSet> up_sets;
    };

    void finish() {
        const std::size_t n = size();
        down_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (int j : members(up_[i])) down_[static_cast<std::size_t>(j)] |= bit(static_cast<int>(i));
        ucov_.assign(n, 0);
        lcov_.assign(n, 0);
        covers_.clear();
        for (std::size_t i = 0; i < n; ++i) {
            ElementSet strict = up_[i] & ~bit(static_cast<int>(i));
            ElementSet c = strict;
            for (int j : members(strict)) c &= ~(up_[static_cast<std::size_t>(j)] & ~bit(j));
            ucov_[i] = c;
            for (int j : members(c)) {
                lcov_[static_cast<std::size_t>(j)] |= bit(static_cast<int>(i));
                covers_.emplace_back(static_cast<int>(i), j);
            }
        }
        cache_ = std::make_shared<Cache>();
    }

    std::vector<ElementSet> compute_up_sets() const {
        std::vector<int> order = linear_extension();
        std::reverse(order.begin(), order.end());
        std::vector<ElementSet> out;
        // Deciding elements from the top down, inclusion is legal exactly
        // when every strictly larger element is already included.
        auto rec = [&](auto&& self, std::size_t pos, ElementSet cur) -> void {
            if (pos == order.size()) {
                out.push_back(cur);
                return;
            }
            int e = order[pos];
            self(self, pos + 1, cur);
            ElementSet above = up(e) & ~bit(e);
            if ((above & ~cur) == 0) self(self, pos + 1, cur | bit(e));
        };
        rec(rec, 0, 0);
        std::sort(out.begin(), out.end(), set_order_less);
        return out;
    }

    std::vector<std::string> names_;
    std::vector<ElementSet> up_, down_, ucov_, lcov_;
    std::vector<std::pair<int, int>> covers_;
    std::shared_ptr<Cache> cache_;
};

using PosetRef = std::shared_ptr<const Poset>;

inline PosetRef share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

inline std::string format_set(const Poset& p, ElementSet s) {
    std::string out = "{";
    bool first = true;
    for (int i : members(s)) {
        if (!first) out += ", ";
        out += p.name(i);
        first = false;
    }
    return out + "}";
}

inline std::vector<ElementSet> up_sets(const Poset& p) { return p.up_sets(); }

inline ElementSet down_set_generated(const Poset& p, ElementSet b) { return p.down_closure(b); }
inline ElementSet up_set_generated(const Poset& p, ElementSet b) { return p.up_closure(b); }

inline Poset dual(const Poset& p) {
    std::vector<ElementSet> up(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) up[i] = p.down(static_cast<int>(i));
    return Poset::from_up_masks(p.names(), std::move(up));
}

inline Poset induced_subposet(const Poset& p, ElementSet s) {
    std::vector<int> keep = members(s);
    std::vector<std::string> names;
    std::vector<ElementSet> up;
    for (int i : keep) names.push_back(p.name(i));
    for (int i : keep) {
        ElementSet m = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (p.leq(i, keep[j])) m |= bit(static_cast<int>(j));
        up.push_back(m);
    }
    return Poset::from_up_masks(names, std::move(up));
}

inline Poset induced_subposet(const Poset& p, const std::vector<std::string>& ids) {
    return induced_subposet(p, p.set_of(ids));
}

inline Poset disjoint_union(const Poset& p, const Poset& q, const std::string& prefix_p = "",
                            const std::string& prefix_q = "") {
    std::vector<std::string> names;
    std::vector<ElementSet> up;
    for (std::size_t i = 0; i < p.size(); ++i) {
        names.push_back(prefix_p + p.names()[i]);
        up.push_back(p.up(static_cast<int>(i)));
    }
    int off = static_cast<int>(p.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        names.push_back(prefix_q + q.names()[i]);
        up.push_back(q.up(static_cast<int>(i)) << off);
    }
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::IdentifierCollision, "ground sets overlap after prefixing");
    return Poset::from_up_masks(names, std::move(up));
}

// Connected components of the cover graph, ordered by smallest element.
inline std::vector<ElementSet> component_sets(const Poset& p) {
    std::vector<ElementSet> out;
    ElementSet seen = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (contains(seen, static_cast<int>(i))) continue;
        ElementSet comp = bit(static_cast<int>(i)), frontier = comp;
        while (frontier) {
            ElementSet next = 0;
            for (int v : members(frontier)) next |= p.neighbors(v);
            frontier = next & ~comp;
            comp |= next;
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

inline std::vector<Poset> components(const Poset& p) {
    std::vector<Poset> out;
    for (ElementSet c : component_sets(p)) out.push_back(induced_subposet(p, c));
    return out;
}

inline bool is_connected(const Poset& p) { return component_sets(p).size() == 1; }

// Number of elements in a longest chain.
inline int height(const Poset& p) {
    std::vector<int> h(p.size(), 0);
    int best = 0;
    for (int i : p.linear_extension()) {
        int m = 0;
        for (int j : members(p.lower_covers(i))) m = std::max(m, h[static_cast<std::size_t>(j)]);
        h[static_cast<std::size_t>(i)] = m + 1;
        best = std::max(best, m + 1);
    }
    return best;
}

inline ElementSet leaves(const Poset& p) {
    ElementSet s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.degree(static_cast<int>(i)) == 1) s |= bit(static_cast<int>(i));
    return s;
}

// Rotates a cycle to start at its smallest vertex, heading to the smaller neighbour.
// Starts at the first cycle element lying below both of its neighbours and
// walks towards the smaller neighbour.
inline std::vector<int> normalize_cycle(const Poset& p, std::vector<int> c) {
    if (c.size() < 3) return c;
    const std::size_t n = c.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        int x = c[i], a = c[(i + n - 1) % n], b = c[(i + 1) % n];
        if (p.less(x, a) && p.less(x, b) && (start == n || x < c[start])) start = i;
    }
    if (start == n) start = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
    std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(start), c.end());
    if (c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
    return c;
}

struct AcyclicityResult {
    bool acyclic = true;
    std::vector<int> cycle;  // vertices of a cycle in the cover graph, closing edge implied
};

inline AcyclicityResult is_acyclic(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    std::vector<ElementSet> forest(n, 0);
    for (auto [u, v] : p.cover_pairs()) {
        int ru = root(u), rv = root(v);
        if (ru != rv) {
            parent[static_cast<std::size_t>(ru)] = rv;
            forest[static_cast<std::size_t>(u)] |= bit(v);
            forest[static_cast<std::size_t>(v)] |= bit(u);
            continue;
        }
        std::vector<int> prev(n, -1);
        std::vector<int> queue{u};
        prev[static_cast<std::size_t>(u)] = u;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (int y : members(forest[static_cast<std::size_t>(x)]))
                if (prev[static_cast<std::size_t>(y)] < 0) {
                    prev[static_cast<std::size_t>(y)] = x;
                    queue.push_back(y);
                }
        }
        std::vector<int> cyc;
        for (int x = v; x != u; x = prev[static_cast<std::size_t>(x)]) cyc.push_back(x);
        cyc.push_back(u);
        return {false, normalize_cycle(p, cyc)};
    }
    return {true, {}};
}

struct Embedding {
    std::vector<int> image;  // pattern index -> host index
    bool dual = false;       // true when the dual pattern was matched
};

// Lexicographically first order embedding of `pattern` as an induced
// subposet of `p`; with allow_dual the dual pattern is tried second.
inline std::optional<Embedding> find_induced_pattern(const Poset& p, const Poset& pattern, bool allow_dual = false) {
    auto search = [&](const Poset& pat) -> std::optional<std::vector<int>> {
        const std::size_t k = pat.size();
        if (k > p.size()) return std::nullopt;
        std::vector<int> img(k, -1);
        ElementSet used = 0;
        auto rec = [&](auto&& self, std::size_t i) -> bool {
            if (i == k) return true;
            for (std::size_t c = 0; c < p.size(); ++c) {
                int h = static_cast<int>(c);
                if (contains(used, h)) continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) {
                    int pi = static_cast<int>(i), pj = static_cast<int>(j), hj = img[j];
                    ok = pat.leq(pj, pi) == p.leq(hj, h) && pat.leq(pi, pj) == p.leq(h, hj);
                }
                if (!ok) continue;
                img[i] = h;
                used |= bit(h);
                if (self(self, i + 1)) return true;
                used &= ~bit(h);
            }
            return false;
        };
        if (rec(rec, 0)) return img;
        return std::nullopt;
    };
    if (auto e = search(pattern)) return Embedding{*e, false};
    if (allow_dual)
        if (auto e = search(dual(pattern))) return Embedding{*e, true};
    return std::nullopt;
}

}  // namespace monoeq
