#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "monoeq/patterns.hpp"
#include "monoeq/poset.hpp"

namespace monoeq {

// ---------------------------------------------------------------- paths

struct PathWitness {
    std::vector<int> vertices;
    std::vector<int> turns;  // positions in `vertices` of the segment endpoints
};

inline bool is_cover_path(const Poset& p, const std::vector<int>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!contains(p.neighbors(v[i]), v[i + 1])) return false;
    ElementSet seen = 0;
    for (int x : v) {
        if (contains(seen, x)) return false;
        seen |= bit(x);
    }
    return true;
}

// The order a path carries on its own vertices agrees with the ambient order.
inline bool is_induced_path(const Poset& p, const std::vector<int>& v) {
    if (!is_cover_path(p, v)) return false;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool up = true, down = true;
        for (std::size_t j = i + 1; j < n; ++j) {
            up = up && p.covers(v[j - 1], v[j]);
            down = down && p.covers(v[j], v[j - 1]);
            if (p.leq(v[i], v[j]) != up || p.leq(v[j], v[i]) != down) return false;
        }
    }
    return true;
}

inline std::vector<int> path_turns(const Poset& p, const std::vector<int>& v) {
    std::vector<int> t{0};
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        bool in_up = p.covers(v[i - 1], v[i]);
        bool out_up = p.covers(v[i], v[i + 1]);
        if (in_up != out_up) t.push_back(static_cast<int>(i));
    }
    if (v.size() > 1) t.push_back(static_cast<int>(v.size() - 1));
    return t;
}

inline bool connected_within(const Poset& p, ElementSet allowed, int x, int y) {
    if (!contains(allowed, x) || !contains(allowed, y)) return false;
    ElementSet seen = bit(x), frontier = seen;
    while (frontier) {
        ElementSet next = 0;
        for (int v : members(frontier)) next |= p.neighbors(v) & allowed;
        frontier = next & ~seen;
        seen |= next;
        if (contains(seen, y)) return true;
    }
    return contains(seen, y);
}

namespace detail {

// Simple cover-graph paths from x to y inside `allowed`, in neighbour order.
inline bool for_each_simple_path(const Poset& p, ElementSet allowed, int x, int y,
                                 const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> path{x};
    auto rec = [&](auto&& self, ElementSet used) -> bool {
        int last = path.back();
        if (last == y) return visit(path);
        for (int nb : members(p.neighbors(last) & allowed & ~used)) {
            path.push_back(nb);
            if (self(self, used | bit(nb))) return true;
            path.pop_back();
        }
        return false;
    };
    return rec(rec, bit(x));
}

// Path from x to y within `allowed` with the fewest monotone segments,
// then fewest edges.
inline std::vector<int> fewest_segment_path(const Poset& p, ElementSet allowed, int x, int y) {
    const int n = static_cast<int>(p.size());
    // state = vertex * 3 + direction (0 none, 1 up, 2 down)
    using Key = std::tuple<int, int, int>;
    std::vector<std::pair<int, int>> dist(static_cast<std::size_t>(n * 3), {1 << 29, 1 << 29});
    std::vector<int> prev(static_cast<std::size_t>(n * 3), -1);
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    dist[static_cast<std::size_t>(x * 3)] = {1, 0};
    pq.emplace(1, 0, x * 3);
    while (!pq.empty()) {
        auto [seg, len, st] = pq.top();
        pq.pop();
        if (std::make_pair(seg, len) != dist[static_cast<std::size_t>(st)]) continue;
        int v = st / 3, d = st % 3;
        for (int w : members(p.neighbors(v) & allowed)) {
            int nd = p.covers(v, w) ? 1 : 2;
            int nseg = seg + ((d != 0 && d != nd) ? 1 : 0);
            int ns = w * 3 + nd;
            std::pair<int, int> cand{nseg, len + 1};
            if (cand < dist[static_cast<std::size_t>(ns)]) {
                dist[static_cast<std::size_t>(ns)] = cand;
                prev[static_cast<std::size_t>(ns)] = st;
                pq.emplace(nseg, len + 1, ns);
            }
        }
    }
    int best = -1;
    for (int d = 0; d < 3; ++d) {
        int st = y * 3 + d;
        if (dist[static_cast<std::size_t>(st)].first >= (1 << 29)) continue;
        if (best < 0 || dist[static_cast<std::size_t>(st)] < dist[static_cast<std::size_t>(best)]) best = st;
    }
    if (best < 0) return {};
    std::vector<int> walk;
    for (int st = best; st >= 0; st = prev[static_cast<std::size_t>(st)]) walk.push_back(st / 3);
    std::reverse(walk.begin(), walk.end());
    // Cutting out loops never adds segments.
    std::vector<int> path;
    for (int v : walk) {
        auto it = std::find(path.begin(), path.end(), v);
        if (it != path.end())
            path.erase(it + 1, path.end());
        else
            path.push_back(v);
    }
    return path;
}

inline std::vector<int> monotone_path_down(const Poset& p, int hi, int lo) {
    // BFS along lower covers staying above lo.
    std::vector<int> prev(p.size(), -1);
    std::vector<int> queue{hi};
    prev[static_cast<std::size_t>(hi)] = hi;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        if (v == lo) break;
        for (int w : members(p.lower_covers(v)))
            if (p.leq(lo, w) && prev[static_cast<std::size_t>(w)] < 0) {
                prev[static_cast<std::size_t>(w)] = v;
                queue.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = lo; v != hi; v = prev[static_cast<std::size_t>(v)]) path.push_back(v);
    path.push_back(hi);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

// Induced path between x and y: shrink to a minimal up-set, then a minimal
// down-set, both still joining x and y, and take a path with the fewest
// monotone segments inside their intersection.
inline PathWitness induced_path(const Poset& p, int x, int y) {
    if (!connected_within(p, p.all(), x, y))
        throw Error(Errc::NotConnected, p.name(x) + " and " + p.name(y) + " lie in different components");
    if (x == y) return {{x}, {0}};
    auto shrink = [&](ElementSet start, bool up_set, ElementSet other) {
        ElementSet cur = start;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int e : members(cur)) {
                ElementSet rel = up_set ? (p.down(e) & cur) : (p.up(e) & cur);
                if (rel != bit(e)) continue;  // not extremal in cur
                ElementSet trial = cur & ~bit(e);
                if (connected_within(p, trial & other, x, y)) {
                    cur = trial;
                    changed = true;
                    break;
                }
            }
        }
        return cur;
    };
    ElementSet u0 = shrink(p.all(), true, p.all());
    ElementSet v0 = shrink(p.all(), false, u0);
    std::vector<int> path = detail::fewest_segment_path(p, u0 & v0, x, y);
    if (path.empty() || !is_induced_path(p, path)) {
        path.clear();
        detail::for_each_simple_path(p, p.all(), x, y, [&](const std::vector<int>& cand) {
            if (!is_induced_path(p, cand)) return false;
            path = cand;
            return true;
        });
        if (path.empty()) throw Error(Errc::Internal, "no induced path found");
    }
    return {path, path_turns(p, path)};
}

// ---------------------------------------------------------------- cycles

inline bool is_cover_cycle(const Poset& p, const std::vector<int>& c) {
    if (c.size() < 4 || !is_cover_path(p, c)) return false;
    return contains(p.neighbors(c.back()), c.front());
}

// Every pair on the cycle is related in the ambient order exactly when one
// of the two arcs between them is monotone.
inline bool is_induced_cycle(const Poset& p, const std::vector<int>& c) {
    if (!is_cover_cycle(p, c)) return false;
    const std::size_t n = c.size();
    auto arc_up = [&](std::size_t i, std::size_t j, int dir) {
        for (std::size_t k = i; k != j; k = (k + static_cast<std::size_t>(dir) + n) % n) {
            std::size_t nx = (k + static_cast<std::size_t>(dir) + n) % n;
            if (!p.covers(c[k], c[nx])) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool rel = arc_up(i, j, 1) || arc_up(i, j, -1);
            if (p.leq(c[i], c[j]) != rel) return false;
        }
    return true;
}

inline int cycle_height(const Poset& p, const std::vector<int>& c) {
    ElementSet s = 0;
    for (int v : c) s |= bit(v);
    return height(induced_subposet(p, s));
}

// Calls visit on every induced cycle once, smallest vertex first.
inline void for_each_induced_cycle(const Poset& p, const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = static_cast<int>(p.size());
    std::vector<int> path;
    bool stop = false;
    auto rec = [&](auto&& self, ElementSet used) -> void {
        if (stop) return;
        int last = path.back();
        int s = path.front();
        for (int w : members(p.neighbors(last))) {
            if (stop) return;
            if (w == s && path.size() >= 4 && path[1] < path.back()) {
                if (is_induced_cycle(p, path) && visit(path)) stop = true;
                continue;
            }
            if (w <= s || contains(used, w)) continue;
            // a chord to an earlier vertex rules the cycle out
            ElementSet earlier = used & ~bit(last) & ~bit(s);
            if (p.neighbors(w) & earlier) continue;
            path.push_back(w);
            self(self, used | bit(w));
            path.pop_back();
        }
    };
    for (int s = 0; s < n && !stop; ++s) {
        path = {s};
        rec(rec, bit(s));
    }
}

inline std::vector<int> induced_cycle(const Poset& p, const std::vector<int>& seed) {
    if (!is_cover_cycle(p, seed)) throw Error(Errc::InvalidSeed, "seed is not a cycle of the cover graph");
    int x0 = seed.front(), xl = seed.back();
    std::vector<std::pair<std::string, std::string>> cov;
    for (auto [a, b] : p.cover_pairs())
        if (!((a == x0 && b == xl) || (a == xl && b == x0))) cov.emplace_back(p.name(a), p.name(b));
    Poset cut = Poset::from_cover_relations(p.names(), cov);
    std::vector<int> cyc = induced_path(cut, x0, xl).vertices;
    if (is_induced_cycle(p, cyc)) return cyc;
    std::vector<int> found;
    ElementSet allowed = p.all();
    detail::for_each_simple_path(cut, allowed, x0, xl, [&](const std::vector<int>& cand) {
        if (cand.size() < 4 || !is_induced_cycle(p, cand)) return false;
        found = cand;
        return true;
    });
    if (found.empty()) throw Error(Errc::Internal, "no induced cycle through the seed edge");
    return found;
}

// Induced cycle z < W1 ... y' ... W2 > z with one minimum and one maximum.
inline std::vector<int> subdivided_diamond(const Poset& p, int x, int y) {
    for (int z : members(p.up(x) & p.down(y))) {
        std::vector<int> ups;
        for (int u : members(p.upper_covers(z)))
            if (p.leq(u, y)) ups.push_back(u);
        for (std::size_t i = 0; i < ups.size(); ++i)
            for (std::size_t j = i + 1; j < ups.size(); ++j) {
                int u1 = ups[i], v1 = ups[j];
                ElementSet common = p.up(u1) & p.up(v1);
                int top = -1;
                for (int c : members(common))
                    if ((p.down(c) & common) == bit(c)) {
                        top = c;
                        break;
                    }
                std::vector<int> w1 = detail::monotone_path_down(p, top, u1);
                std::vector<int> w2 = detail::monotone_path_down(p, top, v1);
                std::reverse(w1.begin(), w1.end());
                std::vector<int> cyc{z};
                cyc.insert(cyc.end(), w1.begin(), w1.end());
                cyc.insert(cyc.end(), w2.begin() + 1, w2.end());
                if (!is_induced_cycle(p, cyc)) throw Error(Errc::Internal, "subdivided diamond is not induced");
                return cyc;
            }
    }
    throw Error(Errc::NoTwoUpwardPaths, "no two distinct upward paths from " + p.name(x) + " to " + p.name(y));
}

inline std::vector<int> induced_cycle_height3(const Poset& p) {
    if (auto e = find_induced_pattern(p, shapes::diamond()))
        return subdivided_diamond(p, e->image[static_cast<std::size_t>(shapes::diamond().index("x"))],
                                  e->image[static_cast<std::size_t>(shapes::diamond().index("w"))]);
    for (std::size_t xi = 0; xi < p.size(); ++xi) {
        int x0 = static_cast<int>(xi);
        for (int x1 : members(p.lower_covers(x0)))
            for (int xl : members(p.upper_covers(x0))) {
                if (!connected_within(p, p.all() & ~bit(x0), x1, xl)) continue;
                std::vector<std::string> names;
                std::vector<std::pair<std::string, std::string>> cov;
                for (std::size_t i = 0; i < p.size(); ++i)
                    if (static_cast<int>(i) != x0) names.push_back(p.name(static_cast<int>(i)));
                for (auto [a, b] : p.cover_pairs())
                    if (a != x0 && b != x0) cov.emplace_back(p.name(a), p.name(b));
                Poset cut = Poset::from_cover_relations(names, cov);
                std::vector<int> u;
                for (int v : induced_path(cut, cut.index(p.name(x1)), cut.index(p.name(xl))).vertices)
                    u.push_back(p.index(cut.name(v)));
                std::vector<int> closed{x0};
                closed.insert(closed.end(), u.begin(), u.end());
                if (is_induced_cycle(p, closed) && cycle_height(p, closed) >= 3) return closed;
                for (std::size_t len = 2; len < u.size(); ++len)
                    for (std::size_t i = 0; i + len < u.size(); ++i) {
                        std::vector<int> seg(u.begin() + static_cast<long>(i), u.begin() + static_cast<long>(i + len + 1));
                        if (is_induced_path(p, seg)) continue;
                        int a = seg.front(), b = seg.back();
                        if (!p.comparable(a, b)) continue;
                        std::vector<int> w = p.leq(a, b) ? detail::monotone_path_down(p, b, a)
                                                          : detail::monotone_path_down(p, a, b);
                        if (w.front() != b) std::reverse(w.begin(), w.end());
                        std::vector<int> cyc = seg;
                        cyc.insert(cyc.end(), w.begin() + 1, w.end() - 1);
                        if (is_induced_cycle(p, cyc) && cycle_height(p, cyc) >= 3) return cyc;
                        goto brute;
                    }
                goto brute;
            }
    }
    return {};
brute:
    std::vector<int> found;
    for_each_induced_cycle(p, [&](const std::vector<int>& c) {
        if (cycle_height(p, c) < 3) return false;
        found = c;
        return true;
    });
    if (found.empty()) throw Error(Errc::Internal, "cycle of height 3 exists but no induced one was found");
    return found;
}

// ---------------------------------------------------------------- classes

enum class TargetClass { B, Y, W, Z };

inline const char* class_name(TargetClass c) {
    switch (c) {
        case TargetClass::B: return "B";
        case TargetClass::Y: return "Y";
        case TargetClass::W: return "W";
        case TargetClass::Z: return "Z";
    }
    return "?";
}

struct Classification {
    TargetClass cls = TargetClass::Z;
    std::vector<int> cycle;                      // class B via a cover-graph cycle
    std::optional<Embedding> embedding;          // induced pattern otherwise
    std::string pattern;                         // "bowtie", "Y", "W" or ""
};

inline Classification classify(const Poset& p) {
    if (p.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (!is_connected(p)) throw Error(Errc::NotConnected, "classification needs a connected poset");
    Classification c;
    auto ac = is_acyclic(p);
    if (!ac.acyclic) {
        c.cls = TargetClass::B;
        c.cycle = ac.cycle;
        return c;
    }
    if (auto e = find_induced_pattern(p, shapes::bowtie())) {
        c.cls = TargetClass::B;
        c.embedding = e;
        c.pattern = "bowtie";
        return c;
    }
    if (auto e = find_induced_pattern(p, shapes::y_poset(), true)) {
        c.cls = TargetClass::Y;
        c.embedding = e;
        c.pattern = "Y";
        return c;
    }
    if (auto e = find_induced_pattern(p, shapes::w_poset(), true)) {
        c.cls = TargetClass::W;
        c.embedding = e;
        c.pattern = "W";
        return c;
    }
    return c;
}

// ---------------------------------------------------------------- rooted trees

enum class SectionKind { Whole, UpSet, DownSet };

struct RootedTree {
    Poset base;
    int root = 0;
    std::vector<int> parent;              // -1 at the root
    std::vector<ElementSet> children;
    std::vector<ElementSet> section;      // x and everything hanging below it
    std::vector<SectionKind> kind;

    bool tree_leq(int x, int y) const { return contains(section[static_cast<std::size_t>(y)], x); }
    // Children first.
    std::vector<int> bottom_up() const {
        std::vector<int> order(base.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return set_size(section[static_cast<std::size_t>(a)]) < set_size(section[static_cast<std::size_t>(b)]);
        });
        return order;
    }
    friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.root == b.root && a.base == b.base; }
};

inline RootedTree rooted_tree(const Poset& p, int root) {
    if (p.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (!is_connected(p)) throw Error(Errc::NotConnected, "rooted tree needs a connected poset");
    if (!is_acyclic(p).acyclic) throw Error(Errc::NotAcyclic, "rooted tree needs an acyclic poset");
    if (p.size() > 1 && set_size(p.neighbors(root)) != 1) throw Error(Errc::NotALeaf, p.name(root) + " is not a leaf");
    const std::size_t n = p.size();
    RootedTree t;
    t.base = p;
    t.root = root;
    t.parent.assign(n, -1);
    t.children.assign(n, 0);
    t.section.assign(n, 0);
    t.kind.assign(n, SectionKind::Whole);
    std::vector<int> order{root};
    ElementSet seen = bit(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int w : members(p.neighbors(v) & ~seen)) {
            seen |= bit(w);
            t.parent[static_cast<std::size_t>(w)] = v;
            t.children[static_cast<std::size_t>(v)] |= bit(w);
            t.kind[static_cast<std::size_t>(w)] = p.covers(w, v) ? SectionKind::DownSet : SectionKind::UpSet;
            order.push_back(w);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::size_t v = static_cast<std::size_t>(*it);
        t.section[v] |= bit(*it);
        if (t.parent[v] >= 0) t.section[static_cast<std::size_t>(t.parent[v])] |= t.section[v];
    }
    return t;
}

// ---------------------------------------------------------------- enlargement

enum class ObstructionKind { Diamond, Crown, DoubleBowtie, TallCycle };

inline const char* obstruction_name(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::Diamond: return "diamond";
        case ObstructionKind::Crown: return "crown";
        case ObstructionKind::DoubleBowtie: return "double-bowtie";
        case ObstructionKind::TallCycle: return "subdivided-crown";
    }
    return "?";
}

struct Obstruction {
    ObstructionKind kind = ObstructionKind::Diamond;
    int k = 0;                    // crown size, when kind == Crown
    std::vector<int> elements;    // embedding image, or the cycle
};

class NotEnlargeableError : public Error {
public:
    NotEnlargeableError(Obstruction o, const std::string& what)
        : Error(Errc::NotEnlargeable, what), obstruction_(std::move(o)) {}
    const Obstruction& obstruction() const { return obstruction_; }

private:
    Obstruction obstruction_;
};

inline std::optional<Obstruction> check_enlargeable(const Poset& p) {
    if (p.empty()) throw Error(Errc::EmptyPoset, "empty poset");
    if (!is_connected(p)) throw Error(Errc::NotConnected, "enlargeability needs a connected poset");
    if (is_acyclic(p).acyclic) return std::nullopt;
    if (auto e = find_induced_pattern(p, shapes::diamond())) return Obstruction{ObstructionKind::Diamond, 0, e->image};
    for (int k = 3; 2 * k <= static_cast<int>(p.size()); ++k)
        if (auto e = find_induced_pattern(p, shapes::crown(k, "a", "b")))
            return Obstruction{ObstructionKind::Crown, k, e->image};
    if (auto e = find_induced_pattern(p, shapes::double_bowtie()))
        return Obstruction{ObstructionKind::DoubleBowtie, 0, e->image};
    std::optional<Obstruction> found;
    for_each_induced_cycle(p, [&](const std::vector<int>& c) {
        if (c.size() == 4 && cycle_height(p, c) == 2) return false;
        found = Obstruction{ObstructionKind::TallCycle, 0, c};
        return true;
    });
    return found;
}

inline Poset weld(const Poset& a, const Poset& b, const std::string& c) {
    std::set<std::string> na(a.names().begin(), a.names().end());
    std::vector<std::string> shared;
    for (const auto& n : b.names())
        if (na.count(n)) shared.push_back(n);
    if (shared != std::vector<std::string>{c})
        throw Error(Errc::BadIntersection, "ground sets must meet exactly in '" + c + "'");
    std::vector<std::string> names = a.names();
    for (const auto& n : b.names())
        if (n != c) names.push_back(n);
    std::vector<std::pair<std::string, std::string>> cov;
    for (auto [x, y] : a.cover_pairs()) cov.emplace_back(a.name(x), a.name(y));
    for (auto [x, y] : b.cover_pairs()) cov.emplace_back(b.name(x), b.name(y));
    return Poset::from_cover_relations(names, cov);
}

struct BicliqueSplit {
    Poset enlarged;                   // input plus the midpoint
    std::string mid;
    ElementSet lower = 0, upper = 0;  // in the input's indexing
    Poset lower_part, upper_part;     // both contain the midpoint
};

// Inclusion-maximal set L u T (|L|, |T| >= 2) whose cover edges form the
// complete bipartite graph L x T; lexicographically first among those.
inline std::optional<std::pair<ElementSet, ElementSet>> maximal_cover_biclique(const Poset& p) {
    std::vector<int> cand;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (set_size(p.upper_covers(static_cast<int>(i))) >= 2) cand.push_back(static_cast<int>(i));
    std::vector<std::pair<ElementSet, ElementSet>> closed;
    auto rec = [&](auto&& self, std::size_t pos, ElementSet lo, ElementSet hi) -> void {
        if (pos == cand.size()) {
            if (set_size(lo) < 2 || set_size(hi) < 2) return;
            ElementSet common = p.all();
            for (int t : members(hi)) common &= p.lower_covers(t);
            if (common == lo) closed.emplace_back(lo, hi);
            return;
        }
        self(self, pos + 1, lo, hi);
        ElementSet nh = lo ? (hi & p.upper_covers(cand[pos])) : p.upper_covers(cand[pos]);
        if (set_size(nh) >= 2) self(self, pos + 1, lo | bit(cand[pos]), nh);
    };
    rec(rec, 0, 0, 0);
    std::optional<std::pair<ElementSet, ElementSet>> best;
    for (auto& c : closed) {
        ElementSet u = c.first | c.second;
        bool maximal = std::none_of(closed.begin(), closed.end(), [&](const auto& d) {
            ElementSet v = d.first | d.second;
            return v != u && (u & v) == u;
        });
        if (!maximal) continue;
        if (!best || members(u) < members(best->first | best->second)) best = c;
    }
    return best;
}

inline BicliqueSplit split_at_biclique(const Poset& p, const std::string& mid) {
    auto bc = maximal_cover_biclique(p);
    if (!bc) throw Error(Errc::PreconditionFailed, "no complete bipartite cover pattern to split at");
    if (p.find(mid)) throw Error(Errc::IdentifierCollision, "midpoint name '" + mid + "' already used");
    auto [lo, hi] = *bc;
    std::vector<std::string> names = p.names();
    names.push_back(mid);
    std::vector<std::pair<std::string, std::string>> cov;
    for (auto [a, b] : p.cover_pairs())
        if (!(contains(lo, a) && contains(hi, b))) cov.emplace_back(p.name(a), p.name(b));
    for (int a : members(lo)) cov.emplace_back(p.name(a), mid);
    for (int b : members(hi)) cov.emplace_back(mid, p.name(b));
    BicliqueSplit s;
    s.enlarged = Poset::from_cover_relations(names, cov);
    s.mid = mid;
    s.lower = lo;
    s.upper = hi;
    const Poset& e = s.enlarged;
    int c = e.index(mid);
    auto reach = [&](ElementSet start) {
        ElementSet seen = start, frontier = start;
        while (frontier) {
            ElementSet next = 0;
            for (int v : members(frontier)) next |= e.neighbors(v) & ~bit(c);
            frontier = next & ~seen;
            seen |= next;
        }
        return seen | bit(c);
    };
    ElementSet elo = 0, ehi = 0;
    for (int a : members(lo)) elo |= bit(e.index(p.name(a)));
    for (int b : members(hi)) ehi |= bit(e.index(p.name(b)));
    ElementSet part_lo = reach(elo), part_hi = reach(ehi);
    if ((part_lo & part_hi) != bit(c) || (part_lo | part_hi) != e.all())
        throw Error(Errc::Internal, "biclique split did not separate the poset");
    s.lower_part = induced_subposet(e, part_lo);
    s.upper_part = induced_subposet(e, part_hi);
    return s;
}

class NameSource {
public:
    explicit NameSource(const Poset& p, std::string stem = "c") : stem_(std::move(stem)) {
        used_.insert(p.names().begin(), p.names().end());
    }
    std::string next() {
        for (;;) {
            std::string n = counter_ == 0 ? stem_ : stem_ + std::to_string(counter_);
            ++counter_;
            if (used_.insert(n).second) return n;
        }
    }

private:
    std::string stem_;
    int counter_ = 0;
    std::set<std::string> used_;
};

namespace detail {
inline Poset enlarge_rec(const Poset& p, NameSource& names) {
    if (is_acyclic(p).acyclic) return p;
    BicliqueSplit s = split_at_biclique(p, names.next());
    Poset lo = enlarge_rec(s.lower_part, names);
    Poset hi = enlarge_rec(s.upper_part, names);
    return weld(lo, hi, s.mid);
}
}  // namespace detail

inline Poset enlarge_to_acyclic(const Poset& p) {
    if (auto o = check_enlargeable(p))
        throw NotEnlargeableError(*o, std::string("poset contains an induced ") + obstruction_name(o->kind));
    NameSource names(p);
    Poset out = detail::enlarge_rec(p, names);
    if (!is_acyclic(out).acyclic || !is_connected(out))
        throw Error(Errc::Internal, "enlargement is not acyclic");
    if (induced_subposet(out, p.names()) != p) throw Error(Errc::Internal, "enlargement does not induce the input");
    return out;
}

}  // namespace monoeq
