#include "stratlab/config.hpp"
#include "stratlab/error.hpp"
#include "stratlab/report.hpp"
#include "stratlab/suites.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

using namespace stratlab;

int main(int argc, char** argv) {
    CLI::App app{"stratlab: numerical checks for the hyperbolic Anderson model"};
    std::vector<std::string> words;
    std::string suite, config_path, out;
    std::uint64_t seed = 0;
    std::int64_t mc = 0;
    double tol = 0, alpha = 0, alpha0 = 0, theta = 0;
    int d = 1;

    app.add_option("command", words, "[run] <suite>");
    auto* o_suite = app.add_option("--suite", suite, "green|wick|laplace|s2|bound|lemma-a|representation|"
                                                     "localtime|variational|asympt|all");
    app.add_option("--config", config_path, "key = value file")->check(CLI::ExistingFile);
    auto* o_seed = app.add_option("--seed", seed, "seed for Monte Carlo suites");
    auto* o_mc = app.add_option("--mc", mc, "Monte Carlo budget (paths or samples)");
    auto* o_tol = app.add_option("--tol", tol, "override pinned quadrature tolerances");
    auto* o_out = app.add_option("--out", out, "output root; reports go to <out>/<config hash>/");
    auto* o_d = app.add_option("--d", d, "space dimension for the Green suite");
    auto* o_alpha = app.add_option("--alpha", alpha, "Riesz exponent");
    auto* o_alpha0 = app.add_option("--alpha0", alpha0, "time exponent alpha0");
    auto* o_theta = app.add_option("--theta", theta, "Laplace parameter theta");
    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path, cfg);
        if (!words.empty() && words.front() == "run") words.erase(words.begin());
        if (words.size() > 1) fail(ErrorKind::ConfigError, "expected a single suite name");
        if (!words.empty()) cfg.suite = words.front();
        if (o_suite->count()) cfg.suite = suite;
        if (o_seed->count()) cfg.seed = seed;
        if (o_mc->count()) cfg.mc = mc;
        if (o_tol->count()) cfg.tol = tol;
        if (o_out->count()) cfg.out = out;
        if (o_d->count()) cfg.d = d;
        if (o_alpha->count()) cfg.alpha = alpha;
        if (o_alpha0->count()) cfg.alpha0 = alpha0;
        if (o_theta->count()) cfg.theta = theta;
        validate(cfg);

        const std::string hash = config_hash(cfg);
        const Report report = run_suite(cfg.suite, cfg);
        const std::string dir = (std::filesystem::path(cfg.out) / hash).string();
        write_report(dir, report, cfg.suite, hash, canonical(cfg) + "hash=" + hash + "\n");

        std::printf("suite=%s checks=%zu failures=%zu report=%s\n", cfg.suite.c_str(), report.rows.size(),
                    report.failures(), dir.c_str());
        if (!report.all_pass()) {
            std::fprintf(stderr, "first failing check: %s\n", report.first_failure().c_str());
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", to_string(e.kind()), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
