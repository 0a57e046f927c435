// One line per acceptance criterion. Suites run with the pinned budgets; each criterion passes when
// every report row under its check-id prefixes passes.

#include "stratlab/config.hpp"
#include "stratlab/report.hpp"
#include "stratlab/suites.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

using namespace stratlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Outcome from_rows(const Report& r, const std::vector<std::string>& prefixes) {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (const auto& row : r.rows) {
        bool hit = false;
        for (const auto& p : prefixes) hit = hit || starts_with(row.id, p);
        if (!hit) continue;
        ++n;
        if (!row.pass) {
            ++bad;
            if (first.empty())
                first = row.id + " expected=" + fmt(row.expected) + " actual=" + fmt(row.actual) +
                        " tol=" + fmt(row.tolerance);
        }
    }
    Outcome o;
    o.pass = n > 0 && bad == 0;
    o.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " checks";
    if (n == 0) o.detail += ", no matching rows";
    if (!first.empty()) o.detail += "; first failure " + first;
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// byte comparison of two run directories
Outcome same_tree(const fs::path& a, const fs::path& b) {
    std::map<std::string, std::string> fa, fb;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) fa[fs::relative(e.path(), a).string()] = slurp(e.path());
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) fb[fs::relative(e.path(), b).string()] = slurp(e.path());
    Outcome o;
    o.pass = !fa.empty() && fa == fb;
    o.detail = std::to_string(fa.size()) + " files compared";
    if (!o.pass) {
        for (const auto& [k, v] : fa)
            if (!fb.count(k) || fb[k] != v) {
                o.detail += "; differs: " + k;
                break;
            }
    }
    return o;
}

RunConfig config(const std::string& suite, int d = 1, std::int64_t mc = 0) {
    RunConfig c;
    c.suite = suite;
    c.seed = 42;
    c.d = d;
    c.mc = mc;
    c.theta = 2.0;
    c.alpha0 = 0.5;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <stratlab_cli> <scratch dir>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path scratch = argv[2];
    std::setvbuf(stdout, nullptr, _IONBF, 0);

    std::map<std::string, Report> cache;
    auto suite = [&](const std::string& key, const RunConfig& c) -> const Report& {
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, run_suite(c.suite, c)).first;
        return it->second;
    };

    struct Criterion {
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"pair-partition counts", 1,
         [&] { return from_rows(suite("wick", config("wick")), {"wick.pairings.n", "wick.pairing_count.n"}); }},
        {"Wick formula and Monte Carlo cross-check", 10,
         [&] { return from_rows(suite("wick", config("wick")), {"wick.ones.", "wick.mc."}); }},
        {"wave/heat subordination, d = 1", 5,
         [&] { return from_rows(suite("green1", config("green", 1)), {"green.subordination.d1."}); }},
        {"Green kernel mass, d = 1, 2, 3", 10,
         [&] {
             Report all;
             for (int d = 1; d <= 3; ++d) all.merge(suite("green" + std::to_string(d), config("green", d)));
             return from_rows(all, {"green.mass."});
         }},
        {"Laplace identities for |u|^{-a0} and (u+iv)^{-a0}", 30,
         [&] { return from_rows(suite("laplace", config("laplace")), {"laplace.power.", "laplace.complex.0",
                                                                      "laplace.complex.1", "laplace.complex.2",
                                                                      "laplace.complex.3", "laplace.complex.4"}); }},
        {"E S_2 direct vs reduced route", 120,
         [&] { return from_rows(suite("s2", config("s2")), {"s2.routes."}); }},
        {"E S_2 scaling in t", 60, [&] { return from_rows(suite("s2", config("s2")), {"s2.scaling."}); }},
        {"bound certificates and base-case domination", 120,
         [&] {
             return from_rows(suite("bound", config("bound")),
                              {"bound.certificates.", "bound.base.dirac.split11", "bound.base.dirac.left20",
                               "bound.base.dirac.right02"});
         }},
        {"second lemma closed form and decay slope band", 180,
         [&] { return from_rows(suite("lemma-a", config("lemma-a")), {"lemma_a.a2.dirac", "lemma_a.a3.slope_band"}); }},
        {"Laplace representation, n = 1, m = 1e5, K = 512", 600,
         [&] {
             return from_rows(suite("representation", config("representation", 1, 100000)),
                              {"representation.n1"});
         }},
        {"positivity of the complex time-randomized functional", 300,
         [&] { return from_rows(suite("localtime", config("localtime")), {"localtime.positivity."}); }},
        {"kernel chain on 1e6 samples", 30,
         [&] { return from_rows(suite("localtime", config("localtime")), {"localtime.chain"}); }},
        {"variational solver: trials, delta monotonicity, rescaling", 600,
         [&] {
             return from_rows(suite("variational", config("variational")),
                              {"variational.M.trial.", "variational.Edelta.monotone.", "variational.rescale.dirac"});
         }},
        {"algebraic relations between the constants", 1,
         [&] {
             return from_rows(suite("asympt", config("asympt")),
                              {"asympt.relation_roundtrip", "asympt.prefactor_routes"});
         }},
        {"Mittag-Leffler rates", 10,
         [&] { return from_rows(suite("asympt", config("asympt")), {"asympt.mittag_leffler."}); }},
        {"determinism of `run all --seed 42`", 0,
         [&] {
             fs::remove_all(scratch);
             const fs::path a = scratch / "first", b = scratch / "second";
             for (const auto& dir : {a, b}) {
                 const std::string cmd =
                     "\"" + cli + "\" run all --seed 42 --out \"" + dir.string() + "\" > /dev/null 2>&1";
                 const int rc = std::system(cmd.c_str());
                 (void)rc; // nonzero when checks fail; the reports are compared regardless
             }
             return same_tree(a, b);
         }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += o.pass ? 0 : 1;
        std::printf("%s  %-58s %s (%.1f s", o.pass ? "PASS" : "FAIL", criteria[i].name.c_str(), o.detail.c_str(),
                    dt);
        if (criteria[i].budget_s > 0) std::printf(", budget %.0f s", criteria[i].budget_s);
        std::printf(")\n");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
