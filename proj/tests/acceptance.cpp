#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "monoeq/monoeq.hpp"
#include "monoeq/sweeps.hpp"

using namespace monoeq;

namespace {

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
        problem = body();
    } catch (const std::exception& e) {
        problem = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty() && secs >= limit_s) problem = "too slow";
    bool ok = problem.empty();
    if (!ok) ++failures;
    std::printf("%s %2d %s (%.2fs / %.0fs)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s,
                ok ? "" : ": ", problem.c_str());
    std::fflush(stdout);
}

std::string diamond_fixture() {
    Counterexample ce = fixture("ex.dd");
    const MeasureSystem& sys = ce.system;
    if (sys.target->up_sets().size() != 6) return "diamond does not have 6 up-sets";
    for (std::size_t a = 0; a < sys.index->size(); ++a)
        for (std::size_t b = 0; b < sys.index->size(); ++b) {
            if (!sys.index->leq(static_cast<int>(a), static_cast<int>(b))) continue;
            for (ElementSet u : sys.target->up_sets())
                if (sys[static_cast<int>(a)].of(u) > sys[static_cast<int>(b)].of(u)) return "not stochastically monotone";
        }
    auto r = realize(sys);
    auto* cert = std::get_if<InfeasibilityCertificate>(&r);
    if (!cert) return "realize found a coupling";
    auto v = certificate_value(sys, cert->f);
    if (!(v.lhs > v.sup)) return "certificate does not separate";
    return "";
}

std::string crown_values() {
    for (int k = 2; k <= 5; ++k) {
        for (const char* name : {"ex.bc", "ex.dc"}) {
            Counterexample ce = fixture(name, k);
            auto v = certificate_value(ce.system, indicator_family(ce.system, *ce.indicators));
            bool bowtie = std::string(name) == "ex.bc";
            Rational lhs = bowtie ? 1 + Rational(1, 2 * k) : 2 + Rational(1, k);
            Rational sup = bowtie ? 1 : 2;
            if (v.lhs != lhs || v.sup != sup)
                return std::string(name) + " k=" + std::to_string(k) + ": lhs=" + to_string(v.lhs) + " sup=" + to_string(v.sup);
            if (is_realizable(ce.system)) return std::string(name) + " k=" + std::to_string(k) + " realizable";
        }
    }
    return "";
}

}  // namespace

int main() {
    report(1, "diamond/diamond fixture: monotone, not realizable", 1, diamond_fixture);
    report(2, "crown fixture certificate values k=2..5", 5, crown_values);

    sweeps::SuiteOptions opt;
    const std::vector<std::pair<std::string, double>> suites{{"strassen", 120},   {"markov", 600},  {"class-z", 120},
                                                             {"insert-middle", 60}, {"enlarge", 300}, {"class-y", 300},
                                                             {"classifier", 120}};
    std::map<std::string, std::string> first;
    int id = 3;
    for (const auto& [name, limit] : suites) {
        report(id++, "sweep " + name, limit, [&, name = name]() -> std::string {
            sweeps::Report r = sweeps::run(name, opt);
            first[name] = r.text();
            if (!r.pass) return r.text();
            return "";
        });
    }
    report(10, "sweeps are deterministic", 1200, [&]() -> std::string {
        for (const auto& [name, limit] : suites) {
            std::string again = sweeps::run(name, opt).text();
            if (again != first[name]) return name + " differs on rerun";
        }
        return "";
    });
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
    return failures == 0 ? 0 : 1;
}
