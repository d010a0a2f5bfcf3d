#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monoeq/monoeq.hpp"
#include "monoeq/sweeps.hpp"

using namespace monoeq;

namespace {

enum Exit { kOk = 0, kNegative = 1, kError = 2, kUnknown = 3 };

// Ordered key/value output; `raw` entries are file bodies printed verbatim in text mode.
struct Output {
    struct Field {
        std::string key;
        std::string value;
        bool raw = false;
    };
    std::vector<Field> fields;

    void add(const std::string& k, const std::string& v) { fields.push_back({k, v, false}); }
    void body(const std::string& k, const std::string& v) { fields.push_back({k, v, true}); }

    void print(bool json, std::ostream& out) const {
        if (!json) {
            for (const auto& f : fields) {
                if (f.raw)
                    out << f.value;
                else
                    out << f.key << ": " << f.value << "\n";
            }
            return;
        }
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        std::map<std::string, int> count;
        for (const auto& f : fields) ++count[f.key];
        for (const auto& f : fields) {
            if (count[f.key] > 1)
                j[f.key].push_back(f.value);
            else
                j[f.key] = f.value;
        }
        out << j.dump(2) << "\n";
    }
};

struct Globals {
    std::uint64_t max_delta = kDefaultDeltaCap;
    std::uint64_t seed = 1;
    std::string format = "text";
    bool json() const { return format == "json"; }
};

io::Workspace load(const std::vector<std::string>& files) {
    io::Workspace ws;
    for (const auto& f : files) io::parse_into(ws, io::read_file(f));
    return ws;
}

std::pair<std::string, PosetRef> first_poset(const std::string& file, const std::string& name = "") {
    io::Workspace ws = load({file});
    if (ws.poset_order.empty()) throw Error(Errc::ParseError, file + ": no poset block");
    std::string n = name.empty() ? ws.poset_order.front() : name;
    return {n, ws.poset(n)};
}

const io::NamedSystem& pick_system(const io::Workspace& ws, const std::string& name) {
    if (ws.systems.empty()) throw Error(Errc::ParseError, "no system block");
    if (name.empty()) return ws.systems.back();
    for (const auto& s : ws.systems)
        if (s.name == name) return s;
    throw Error(Errc::ParseError, "no system named '" + name + "'");
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
    return out;
}

std::string names_of(const Poset& p, const std::vector<int>& ids) {
    std::vector<std::string> v;
    for (int i : ids) v.push_back(p.name(i));
    return join(v);
}

std::string embedding_text(const Poset& host, const Poset& pattern, const Embedding& e) {
    std::string out;
    for (std::size_t i = 0; i < e.image.size(); ++i)
        out += (i ? " " : "") + pattern.name(static_cast<int>(i)) + "->" + host.name(e.image[i]);
    return out + (e.dual ? " (dual)" : "");
}

std::string classification_text(const Poset& p) {
    Classification c = classify(p);
    std::string out = class_name(c.cls);
    if (!c.cycle.empty()) return out + " (cycle: " + names_of(p, c.cycle) + ")";
    if (!c.embedding) return out;
    Poset pattern = c.pattern == "bowtie" ? shapes::bowtie() : c.pattern == "Y" ? shapes::y_poset() : shapes::w_poset();
    return out + " (" + (c.cls == TargetClass::B ? std::string("bowtie") : std::string("embedding")) + ": " +
           embedding_text(p, pattern, *c.embedding) + ")";
}

void emit(const Output& o, const Globals& g, const std::string& out_file = "") {
    if (out_file.empty()) {
        o.print(g.json(), std::cout);
        return;
    }
    std::ofstream f(out_file);
    if (!f) throw Error(Errc::ParseError, "cannot write '" + out_file + "'");
    o.print(g.json(), f);
}

std::string counterexample_bundle(const Counterexample& ce, const std::string& an, const std::string& sn) {
    std::string out = "# provenance: " + ce.provenance + "\n";
    out += io::write_system_bundle(an, sn, ce.system);
    return out + io::write_certificate(an, sn, ce.certificate);
}

// ------------------------------------------------------------------ commands

int cmd_classify(const Globals& g, const std::string& file, const std::string& name) {
    auto [pn, p] = first_poset(file, name);
    Output o;
    o.add("poset", pn);
    auto comps = components(*p);
    for (const auto& c : comps) {
        if (comps.size() > 1) o.add("component", join(c.names()));
        o.add("class", classification_text(c));
    }
    emit(o, g);
    return kOk;
}

int cmd_check(const Globals& g, const std::vector<std::string>& files, const std::string& system,
              const std::string& mode, const std::string& out_file) {
    io::Workspace ws = load(files);
    const io::NamedSystem& ns = pick_system(ws, system);
    Output o;
    o.add("mode", mode);
    if (mode == "stochastic") {
        MonotonicityCheck chk = is_stochastically_monotone(ns.system);
        if (chk.ok) {
            o.add("result", "ok");
        } else {
            o.add("result", "violated");
            o.add("lower", ns.system.index->name(chk.lower));
            o.add("upper", ns.system.index->name(chk.upper));
            o.add("up-set", format_set(*ns.system.target, chk.witness));
        }
        emit(o, g, out_file);
        return chk.ok ? kOk : kNegative;
    }
    Realization r = realize(ns.system, g.max_delta);
    if (auto* c = std::get_if<Coupling>(&r)) {
        o.add("result", "ok");
        o.body("coupling", io::write_coupling(ns.index, ns.target, *c));
        emit(o, g, out_file);
        return kOk;
    }
    o.add("result", "violated");
    o.body("certificate", io::write_certificate(ns.index, ns.target, std::get<InfeasibilityCertificate>(r)));
    emit(o, g, out_file);
    return kNegative;
}

int cmd_decide(const Globals& g, const std::string& fa, const std::string& fs, const std::string& out_file) {
    auto [an, a] = first_poset(fa);
    auto [sn, s] = first_poset(fs);
    Verdict v = decide_equivalence(*a, *s);
    Output o;
    o.add("verdict", outcome_name(v.outcome));
    o.add("reason", v.reason);
    for (const auto& c : v.components) {
        std::string line = "{" + join(c.index_elements) + "} x {" + join(c.target_elements) + "} " +
                           outcome_name(c.outcome) + " " + c.reason;
        if (!c.coupler.empty()) line += " coupler=" + c.coupler;
        o.add("component", line);
    }
    if (v.outcome == Outcome::Holds && v.components.size() == 1) o.add("coupler", v.components.front().coupler);
    if (v.counterexample) {
        o.add("witness", v.counterexample->provenance);
        std::string bundle = counterexample_bundle(*v.counterexample, an, sn == an ? sn + "_target" : sn);
        if (out_file.empty()) {
            o.body("counterexample", bundle);
        } else {
            std::ofstream f(out_file);
            if (!f) throw Error(Errc::ParseError, "cannot write '" + out_file + "'");
            f << bundle;
            o.add("witness-file", out_file);
        }
    }
    emit(o, g);
    switch (v.outcome) {
        case Outcome::Holds: return kOk;
        case Outcome::Fails: return kNegative;
        case Outcome::Unknown: return kUnknown;
    }
    return kError;
}

int cmd_couple(const Globals& g, const std::vector<std::string>& files, const std::string& system,
               std::string strategy, const std::string& out_file) {
    io::Workspace ws = load(files);
    const io::NamedSystem& ns = pick_system(ws, system);
    const MeasureSystem& sys = ns.system;
    if (strategy == "auto") {
        if (is_connected(*sys.index) && is_acyclic(*sys.index).acyclic)
            strategy = "acyclic";
        else if (is_connected(*sys.target) && classify(*sys.target).cls == TargetClass::Z)
            strategy = "class-z";
        else if (is_connected(*sys.index) && is_connected(*sys.target) &&
                 classify(*sys.target).cls != TargetClass::B && !check_enlargeable(*sys.index))
            strategy = "enlargeable";
        else
            strategy = "lp";
        if (strategy != "lp" && !is_stochastically_monotone(sys).ok) strategy = "lp";
    }
    Output o;
    o.add("strategy", strategy);
    if (strategy == "lp") {
        Realization r = realize(sys, g.max_delta);
        if (auto* c = std::get_if<Coupling>(&r)) {
            o.body("coupling", io::write_coupling(ns.index, ns.target, *c));
            emit(o, g, out_file);
            return kOk;
        }
        o.body("certificate", io::write_certificate(ns.index, ns.target, std::get<InfeasibilityCertificate>(r)));
        emit(o, g, out_file);
        return kNegative;
    }
    Coupling c = realize_by_coupler(sys, strategy);
    o.body("coupling", io::write_coupling(ns.index, ns.target, c));
    emit(o, g, out_file);
    return kOk;
}

int cmd_counterexample(const Globals& g, const std::vector<std::string>& files, const std::string& fixture_name,
                       int k, const std::string& out_file) {
    Counterexample ce = [&] {
        if (!fixture_name.empty()) return fixture(fixture_name, k);
        if (files.size() != 2) throw Error(Errc::BadParameter, "expected an index file and a target file");
        auto [an, a] = first_poset(files[0]);
        auto [sn, s] = first_poset(files[1]);
        Verdict v = decide_equivalence(*a, *s);
        if (v.outcome != Outcome::Fails || !v.counterexample)
            throw Error(Errc::PreconditionFailed, std::string("the pair does not fail (") + outcome_name(v.outcome) + ")");
        return *v.counterexample;
    }();
    std::string an = "A", sn = "S";
    if (fixture_name.empty()) {
        an = first_poset(files[0]).first;
        sn = first_poset(files[1]).first;
        if (sn == an) sn += "_target";
    }
    Output o;
    o.add("provenance", ce.provenance);
    o.add("lhs", to_string(ce.certificate.lhs));
    o.add("sup", to_string(ce.certificate.sup));
    o.body("counterexample", io::write_system_bundle(an, sn, ce.system) +
                                 io::write_certificate(an, sn, ce.certificate));
    emit(o, g, out_file);
    return kOk;
}

int cmd_enlarge(const Globals& g, const std::string& file, const std::string& out_file) {
    auto [pn, p] = first_poset(file);
    if (!is_connected(*p)) throw Error(Errc::NotConnected, "poset '" + pn + "' is not connected");
    Output o;
    if (auto obs = check_enlargeable(*p)) {
        o.add("result", "obstruction");
        o.add("pattern", obstruction_name(obs->kind) +
                             (obs->kind == ObstructionKind::Crown ? " k=" + std::to_string(obs->k) : std::string()));
        std::vector<std::string> el;
        for (int i : obs->elements) el.push_back(p->name(i));
        o.add("elements", join(el));
        emit(o, g, out_file);
        return kNegative;
    }
    Poset big = enlarge_to_acyclic(*p);
    o.add("result", "ok");
    o.body("poset", io::write_poset(pn + "_enlarged", big));
    emit(o, g, out_file);
    return kOk;
}

int cmd_random(const Globals& g, const std::string& fa, const std::string& fs, const std::string& out_file) {
    auto [an, a] = first_poset(fa);
    auto [sn, s] = first_poset(fs);
    if (sn == an) sn += "_target";
    Rng rng(g.seed);
    MeasureSystem sys = random_sm_system(a, s, rng);
    Output o;
    o.add("seed", std::to_string(g.seed));
    o.body("system", io::write_system_bundle(an, sn, sys));
    emit(o, g, out_file);
    return kOk;
}

int cmd_sweep(const Globals& g, const std::vector<std::string>& suites, int max_n) {
    sweeps::SuiteOptions opt;
    opt.seed = g.seed;
    if (max_n > 0) {
        if (max_n > 7) throw Error(Errc::TooLarge, "enumeration is limited to 7 elements");
        opt.strassen_max_n = opt.markov_max_n = opt.enlarge_max_n = opt.classifier_max_n = max_n;
    }
    std::vector<std::string> names = suites.empty() ? sweeps::suite_names() : suites;
    Output o;
    bool all = true;
    for (const auto& n : names) {
        sweeps::Report r = sweeps::run(n, opt);
        all = all && r.pass;
        std::string t = r.text();
        t.pop_back();
        o.add("sweep", t);
    }
    emit(o, g);
    return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotone couplings and monotonicity equivalence on finite posets"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-delta", g.max_delta, "Cap on candidate monotone maps");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string file, file2, name, system, out, mode = "stochastic", strategy = "auto", fixture_name;
    std::vector<std::string> files, suites;
    int k = 2, max_n = 0;

    auto* classify_cmd = app.add_subcommand("classify", "Class label per component");
    classify_cmd->add_option("poset-file", file)->required();
    classify_cmd->add_option("--poset", name, "Poset name inside the file");

    auto* check_cmd = app.add_subcommand("check", "Check stochastic or realizable monotonicity of a system");
    check_cmd->add_option("files", files)->required();
    check_cmd->add_option("--mode", mode)->check(CLI::IsMember({"stochastic", "realizable"}));
    check_cmd->add_option("--system", system, "System name");
    check_cmd->add_option("--out", out, "Write the report to a file");

    auto* decide_cmd = app.add_subcommand("decide", "Decide monotonicity equivalence for (A, S)");
    decide_cmd->add_option("index-file", file)->required();
    decide_cmd->add_option("target-file", file2)->required();
    decide_cmd->add_option("--out", out, "Write the counterexample to a file");

    auto* couple_cmd = app.add_subcommand("couple", "Build a monotone coupling");
    couple_cmd->add_option("files", files)->required();
    couple_cmd->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"auto", "lp", "acyclic", "class-z", "enlargeable"}));
    couple_cmd->add_option("--system", system, "System name");
    couple_cmd->add_option("--out", out, "Write the coupling to a file");

    auto* ce_cmd = app.add_subcommand("counterexample", "Certified counterexample for a failing pair");
    ce_cmd->add_option("files", files, "Index and target poset files");
    ce_cmd->add_option("--fixture", fixture_name, "ex.dd, ex.bd, ex.bc, ex.dc or dia.y");
    ce_cmd->add_option("--k", k, "Crown size for ex.bc and ex.dc");
    ce_cmd->add_option("--out", out, "Write to a file");

    auto* enlarge_cmd = app.add_subcommand("enlarge", "Acyclic enlargement or obstruction");
    enlarge_cmd->add_option("poset-file", file)->required();
    enlarge_cmd->add_option("--out", out, "Write to a file");

    auto* random_cmd = app.add_subcommand("random", "Random stochastically monotone system");
    random_cmd->add_option("index-file", file)->required();
    random_cmd->add_option("target-file", file2)->required();
    random_cmd->add_option("--out", out, "Write to a file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Property sweeps over enumerated posets");
    sweep_cmd->add_option("--suite", suites, "Sweep names (default: all)")
        ->check(CLI::IsMember(sweeps::suite_names()));
    sweep_cmd->add_option("--all-posets-up-to", max_n, "Largest enumerated poset size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }

    try {
        if (*classify_cmd) return cmd_classify(g, file, name);
        if (*check_cmd) return cmd_check(g, files, system, mode, out);
        if (*decide_cmd) return cmd_decide(g, file, file2, out);
        if (*couple_cmd) return cmd_couple(g, files, system, strategy, out);
        if (*ce_cmd) return cmd_counterexample(g, files, fixture_name, k, out);
        if (*enlarge_cmd) return cmd_enlarge(g, file, out);
        if (*random_cmd) return cmd_random(g, file, file2, out);
        if (*sweep_cmd) return cmd_sweep(g, suites, max_n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
