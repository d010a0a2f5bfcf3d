#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "monoeq/coupling.hpp"

namespace monoeq::io {

struct NamedSystem {
    std::string name;
    std::string index, target;  // poset names
    std::vector<std::string> measure_names;
    MeasureSystem system;
};

struct NamedCoupling {
    std::string index, target;
    Coupling coupling;
};

struct NamedCertificate {
    std::string index, target;
    InfeasibilityCertificate certificate;
};

// Everything read from one or more text files.
struct Workspace {
    std::map<std::string, PosetRef> posets;
    std::vector<std::string> poset_order;
    std::map<std::string, Measure> measures;
    std::map<std::string, std::string> measure_base;
    std::vector<NamedSystem> systems;
    std::vector<NamedCoupling> couplings;
    std::vector<NamedCertificate> certificates;

    const PosetRef& poset(const std::string& name) const {
        auto it = posets.find(name);
        if (it == posets.end()) throw Error(Errc::ParseError, "unknown poset '" + name + "'");
        return it->second;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct Line {
    int number;
    std::string text;
};

[[noreturn]] inline void fail(const Line& l, const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(l.number) + ": " + msg);
}

inline bool is_header(const std::string& t) {
    auto w = words(t);
    if (w.empty()) return false;
    return w[0] == "poset" || w[0] == "measure" || w[0] == "system" || w[0] == "coupling" || w[0] == "certificate";
}

// Reads "key=value" from a header token.
inline std::string keyed(const Line& l, const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) fail(l, "expected " + key + "=<name>");
    std::string v = tok.substr(key.size() + 1);
    if (v.empty()) fail(l, "empty " + key);
    return v;
}

inline void parse_poset(Workspace& ws, const Line& head, const std::vector<Line>& body) {
    auto h = words(head.text);
    if (h.size() != 2) fail(head, "expected 'poset <name>'");
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> covers;
    bool seen_elements = false;
    for (const auto& l : body) {
        auto colon = l.text.find(':');
        if (colon == std::string::npos) fail(l, "expected 'elements:' or 'covers:'");
        std::string key = trim(std::string_view(l.text).substr(0, colon));
        auto vals = words(std::string_view(l.text).substr(colon + 1));
        if (key == "elements") {
            seen_elements = true;
            elements.insert(elements.end(), vals.begin(), vals.end());
        } else if (key == "covers") {
            for (const auto& tok : vals) {
                std::vector<std::string> parts;
                std::size_t start = 0;
                for (;;) {
                    auto p = tok.find('<', start);
                    parts.push_back(tok.substr(start, p == std::string::npos ? std::string::npos : p - start));
                    if (p == std::string::npos) break;
                    start = p + 1;
                }
                if (parts.size() < 2) fail(l, "cover '" + tok + "' lacks '<'");
                for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
                    if (parts[i].empty() || parts[i + 1].empty()) fail(l, "malformed cover '" + tok + "'");
                    covers.emplace_back(parts[i], parts[i + 1]);
                }
            }
        } else {
            fail(l, "unknown key '" + key + "'");
        }
    }
    if (!seen_elements) fail(head, "poset without an elements line");
    if (ws.posets.count(h[1])) fail(head, "poset '" + h[1] + "' defined twice");
    try {
        ws.posets[h[1]] = share(Poset::from_cover_relations(elements, covers));
    } catch (const Error& e) {
        throw Error(e.code(), "line " + std::to_string(head.number) + ": " + e.what());
    }
    ws.poset_order.push_back(h[1]);
}

inline void parse_measure(Workspace& ws, const Line& head, const std::vector<Line>& body) {
    auto h = words(head.text);
    if (h.size() != 4 || h[2] != "on") fail(head, "expected 'measure <name> on <poset>'");
    const PosetRef& base = ws.poset(h[3]);
    std::vector<Rational> m(base->size(), 0);
    std::vector<bool> seen(base->size(), false);
    for (const auto& l : body) {
        auto eq = l.text.find('=');
        if (eq == std::string::npos) fail(l, "expected '<element> = <p/q>'");
        std::string el = trim(std::string_view(l.text).substr(0, eq));
        std::string val = trim(std::string_view(l.text).substr(eq + 1));
        auto i = base->find(el);
        if (!i) throw Error(Errc::UnknownElement, "line " + std::to_string(l.number) + ": unknown element '" + el + "'");
        if (seen[static_cast<std::size_t>(*i)]) fail(l, "element '" + el + "' listed twice");
        seen[static_cast<std::size_t>(*i)] = true;
        try {
            m[static_cast<std::size_t>(*i)] = parse_rational(val);
        } catch (const Error&) {
            fail(l, "malformed rational '" + val + "'");
        }
    }
    if (ws.measures.count(h[1])) fail(head, "measure '" + h[1] + "' defined twice");
    try {
        ws.measures.emplace(h[1], Measure(base, std::move(m)));
    } catch (const Error& e) {
        throw Error(e.code(), "line " + std::to_string(head.number) + ": " + e.what());
    }
    ws.measure_base[h[1]] = h[3];
}

inline std::pair<std::string, std::string> index_target(const Line& head, std::size_t& pos) {
    auto h = words(head.text);
    pos = h.size() == 5 ? 2 : 1;  // optional block name
    if (h.size() != pos + 3 || h[pos] != "on") fail(head, "expected 'on index=<poset> target=<poset>'");
    return {keyed(head, h[pos + 1], "index"), keyed(head, h[pos + 2], "target")};
}

inline void parse_system(Workspace& ws, const Line& head, const std::vector<Line>& body) {
    std::size_t pos;
    auto [ia, it] = index_target(head, pos);
    auto h = words(head.text);
    NamedSystem ns;
    ns.name = pos == 2 ? h[1] : "";
    ns.index = ia;
    ns.target = it;
    PosetRef a = ws.poset(ia), s = ws.poset(it);
    std::vector<std::string> names(a->size());
    for (const auto& l : body) {
        auto eq = l.text.find(":=");
        if (eq == std::string::npos) fail(l, "expected '<element> := <measure>'");
        std::string el = trim(std::string_view(l.text).substr(0, eq));
        std::string mn = trim(std::string_view(l.text).substr(eq + 2));
        auto i = a->find(el);
        if (!i) throw Error(Errc::UnknownElement, "line " + std::to_string(l.number) + ": unknown element '" + el + "'");
        if (!names[static_cast<std::size_t>(*i)].empty()) fail(l, "element '" + el + "' assigned twice");
        if (!ws.measures.count(mn)) fail(l, "unknown measure '" + mn + "'");
        if (ws.measure_base[mn] != it && !same_poset(ws.measures.at(mn).base_ref(), s))
            throw Error(Errc::BaseMismatch, "line " + std::to_string(l.number) + ": measure '" + mn + "' is not on " + it);
        names[static_cast<std::size_t>(*i)] = mn;
    }
    std::vector<Measure> ms;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) fail(head, "no measure for index element '" + a->name(static_cast<int>(i)) + "'");
        ms.push_back(ws.measures.at(names[i]).rebased(s));
    }
    ns.measure_names = names;
    ns.system = MeasureSystem(a, s, std::move(ms));
    ws.systems.push_back(std::move(ns));
}

inline void parse_coupling(Workspace& ws, const Line& head, const std::vector<Line>& body) {
    std::size_t pos;
    auto [ia, it] = index_target(head, pos);
    PosetRef a = ws.poset(ia), s = ws.poset(it);
    std::vector<CouplingPoint> pts;
    for (const auto& l : body) {
        if (l.text.rfind("order:", 0) == 0) {
            if (words(l.text.substr(6)) != a->names()) fail(l, "order line must list the index elements in order");
            continue;
        }
        auto open = l.text.find('('), close = l.text.find(')'), eq = l.text.find('=', close == std::string::npos ? 0 : close);
        if (open != 0 || close == std::string::npos || eq == std::string::npos) fail(l, "expected '(<values>) = <p/q>'");
        auto vals = words(std::string_view(l.text).substr(1, close - 1));
        if (vals.size() != a->size()) fail(l, "wrong number of values");
        MonotoneMap x;
        for (const auto& v : vals) {
            auto i = s->find(v);
            if (!i) throw Error(Errc::UnknownElement, "line " + std::to_string(l.number) + ": unknown element '" + v + "'");
            x.push_back(*i);
        }
        pts.push_back({x, parse_rational(trim(std::string_view(l.text).substr(eq + 1)))});
    }
    ws.couplings.push_back({ia, it, Coupling::make(a, s, std::move(pts))});
}

inline void parse_certificate(Workspace& ws, const Line& head, const std::vector<Line>& body) {
    std::size_t pos;
    auto [ia, it] = index_target(head, pos);
    PosetRef a = ws.poset(ia), s = ws.poset(it);
    InfeasibilityCertificate c{a, s, std::vector<std::vector<Rational>>(a->size(), std::vector<Rational>(s->size(), 0)), 0, 0};
    bool lhs = false, sup = false;
    for (const auto& l : body) {
        auto w = words(l.text);
        if (w.size() >= 2 && w[0] == "f") {
            std::string al = w[1];
            if (al.empty() || al.back() != ':') fail(l, "expected 'f <element>: <xi>=<p/q> ...'");
            al.pop_back();
            int ai = a->index(al);
            for (std::size_t k = 2; k < w.size(); ++k) {
                auto eq = w[k].find('=');
                if (eq == std::string::npos) fail(l, "expected '<xi>=<p/q>'");
                int xi = s->index(w[k].substr(0, eq));
                c.f[static_cast<std::size_t>(ai)][static_cast<std::size_t>(xi)] = parse_rational(w[k].substr(eq + 1));
            }
        } else if (w.size() == 3 && w[0] == "lhs" && w[1] == "=") {
            c.lhs = parse_rational(w[2]);
            lhs = true;
        } else if (w.size() == 3 && w[0] == "sup" && w[1] == "=") {
            c.sup = parse_rational(w[2]);
            sup = true;
        } else {
            fail(l, "unexpected certificate line");
        }
    }
    if (!lhs || !sup) fail(head, "certificate needs lhs and sup lines");
    ws.certificates.push_back({ia, it, std::move(c)});
}

}  // namespace detail

inline void parse_into(Workspace& ws, std::string_view text) {
    std::vector<detail::Line> lines;
    std::istringstream in{std::string(text)};
    int no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string t = detail::trim(raw);
        if (!t.empty()) lines.push_back({no, t});
    }
    std::size_t i = 0;
    while (i < lines.size()) {
        const detail::Line& head = lines[i];
        if (!detail::is_header(head.text)) detail::fail(head, "expected a block header");
        std::vector<detail::Line> body;
        for (++i; i < lines.size() && !detail::is_header(lines[i].text); ++i) body.push_back(lines[i]);
        std::string kw = detail::words(head.text)[0];
        if (kw == "poset") detail::parse_poset(ws, head, body);
        else if (kw == "measure") detail::parse_measure(ws, head, body);
        else if (kw == "system") detail::parse_system(ws, head, body);
        else if (kw == "coupling") detail::parse_coupling(ws, head, body);
        else detail::parse_certificate(ws, head, body);
    }
}

inline Workspace parse(std::string_view text) {
    Workspace ws;
    parse_into(ws, text);
    return ws;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- writers

inline std::string write_poset(const std::string& name, const Poset& p) {
    std::string out = "poset " + name + "\nelements:";
    for (const auto& n : p.names()) out += " " + n;
    out += "\ncovers:";
    for (auto [a, b] : p.cover_pairs()) out += " " + p.name(a) + "<" + p.name(b);
    return out + "\n";
}

inline std::string write_measure(const std::string& name, const std::string& base_name, const Measure& m) {
    std::string out = "measure " + name + " on " + base_name + "\n";
    for (std::size_t i = 0; i < m.masses().size(); ++i)
        if (m.masses()[i] != 0) out += m.base().name(static_cast<int>(i)) + " = " + to_string(m.masses()[i]) + "\n";
    return out;
}

inline std::string write_system(const std::string& index_name, const std::string& target_name,
                                const MeasureSystem& sys, const std::vector<std::string>& measure_names) {
    std::string out = "system on index=" + index_name + " target=" + target_name + "\n";
    for (std::size_t i = 0; i < sys.index->size(); ++i)
        out += sys.index->name(static_cast<int>(i)) + " := " + measure_names[i] + "\n";
    return out;
}

// Posets, one measure per index element, and the system block.
inline std::string write_system_bundle(const std::string& index_name, const std::string& target_name,
                                       const MeasureSystem& sys) {
    std::string out = write_poset(index_name, *sys.index);
    if (target_name != index_name) out += write_poset(target_name, *sys.target);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < sys.index->size(); ++i) {
        names.push_back("P_" + sys.index->name(static_cast<int>(i)));
        out += write_measure(names.back(), target_name, sys[static_cast<int>(i)]);
    }
    return out + write_system(index_name, target_name, sys, names);
}

inline std::string write_coupling(const std::string& index_name, const std::string& target_name, const Coupling& c) {
    std::string out = "coupling on index=" + index_name + " target=" + target_name + "\norder:";
    for (const auto& n : c.index->names()) out += " " + n;
    out += "\n";
    for (const auto& p : c.points) {
        out += "(";
        for (std::size_t i = 0; i < p.values.size(); ++i) out += (i ? " " : "") + c.target->name(p.values[i]);
        out += ") = " + to_string(p.mass) + "\n";
    }
    return out;
}

inline std::string write_certificate(const std::string& index_name, const std::string& target_name,
                                     const InfeasibilityCertificate& c) {
    std::string out = "certificate on index=" + index_name + " target=" + target_name + "\n";
    for (std::size_t a = 0; a < c.f.size(); ++a) {
        out += "f " + c.index->name(static_cast<int>(a)) + ":";
        for (std::size_t x = 0; x < c.f[a].size(); ++x)
            if (c.f[a][x] != 0) out += " " + c.target->name(static_cast<int>(x)) + "=" + to_string(c.f[a][x]);
        out += "\n";
    }
    return out + "lhs = " + to_string(c.lhs) + "\nsup = " + to_string(c.sup) + "\n";
}

}  // namespace monoeq::io
