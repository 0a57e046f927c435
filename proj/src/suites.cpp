#include "stratlab/suites.hpp"

#include "stratlab/asympt.hpp"
#include "stratlab/error.hpp"
#include "stratlab/localtime.hpp"
#include "stratlab/moments.hpp"
#include "stratlab/rng.hpp"
#include "stratlab/strat_bound.hpp"
#include "stratlab/variational.hpp"
#include "stratlab/wavegreen.hpp"
#include "stratlab/wick.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace stratlab {

namespace {

// pinned tolerance unless --tol overrides it
double tol_or(const RunConfig& c, double pinned) { return c.tol > 0.0 ? c.tol : pinned; }

std::uint64_t seed_of(const RunConfig& c) { return c.seed.value_or(0); }

std::string with(const std::string& a, const std::string& b) { return a.empty() ? b : a + ";" + b; }

template <class F>
bool throws_kind(F&& f, ErrorKind k) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

// ---------------------------------------------------------------- green

Report suite_green(const RunConfig& c) {
    Report r;
    const int d = c.d;
    const double tol = tol_or(c, 1e-6);
    if (d <= 2) {
        const std::vector<double> xs = d == 1 ? std::vector<double>{0.0, 0.5} : std::vector<double>{0.5, 1.0};
        for (double lam : {0.5, 1.0, 2.0})
            for (double x : xs) {
                Point p(d, 0.0);
                p[0] = x;
                const auto s = subordination_check(lam, p, d);
                r.add(check_abs("green.subordination.d" + std::to_string(d) + ".lam" + fmt(lam) + ".x" + fmt(x),
                                "wave/heat subordination", kv({{"d", d}, {"lambda", lam}, {"x", x}}), s.rhs, s.lhs,
                                tol));
            }
        if (d == 1) {
            const auto s = subordination_check(1.0, Point{0.0}, 1);
            r.add(check_abs("green.subordination.d1.unit_origin", "Laplace transform at lambda=1 x=0",
                            kv({{"lambda", 1}, {"x", 0}}), 0.5, s.lhs, tol));
        } else {
            r.add(check_true("green.subordination.d2.origin_divergent", "log divergence at x=0", kv({{"d", 2}}),
                             throws_kind([] { subordination_check(1.0, Point{0.0, 0.0}, 2); },
                                         ErrorKind::Divergent)));
        }
    }
    for (double t : {0.5, 1.0, 2.0}) {
        const GreenSpec g{d, d == 3 ? 1e-3 : 0.0};
        const double mtol = d == 3 ? 1e-3 : tol_or(c, 1e-8);
        r.add(check_abs("green.mass.d" + std::to_string(d) + ".t" + fmt(t), "total mass of the wave kernel",
                        kv({{"d", d}, {"t", t}, {"eta", g.eta}}), t, green_mass(g, t), mtol));
    }
    if (d <= 2) {
        for (double t : {0.5, 2.0}) {
            Point x(d, 0.0);
            x[0] = 0.3 * t;
            if (d == 2) x[1] = 0.2 * t;
            r.add(check_true("green.scaling.d" + std::to_string(d) + ".t" + fmt(t), "self-similarity in t",
                             kv({{"d", d}, {"t", t}}), green_scaling_check(GreenSpec{d, 0.0}, t, x)));
        }
    }
    if (d == 1) {
        for (double xi : {0.0, 0.7, 3.0}) {
            const double t = 1.5;
            r.add(check_abs("green.fourier.xi" + fmt(xi), "Fourier transform sin(|xi|t)/|xi|",
                            kv({{"t", t}, {"xi", xi}}), green_fourier(t, xi), green_fourier_quadrature(t, xi),
                            tol_or(c, 1e-10)));
        }
    }
    return r;
}

// ---------------------------------------------------------------- wick

Report suite_wick(const RunConfig& c) {
    Report r;
    const std::uint64_t counts[] = {1, 3, 15, 105, 945};
    for (int n = 1; n <= 5; ++n) {
        const auto all = enumerate_pairings(n);
        bool ok = true;
        for (const auto& p : all) ok = ok && p.valid() && p.order() == n;
        r.add(check_abs("wick.pairings.n" + std::to_string(n), "pair-partition count (2n)!/(2^n n!)",
                        kv({{"n", n}}), static_cast<double>(counts[n - 1]), static_cast<double>(all.size()), 0.0));
        r.add(check_abs("wick.pairing_count.n" + std::to_string(n), "closed-form count", kv({{"n", n}}),
                        static_cast<double>(counts[n - 1]), static_cast<double>(pairing_count(n)), 0.0));
        r.add(check_true("wick.pairings_valid.n" + std::to_string(n), "perfect matchings", kv({{"n", n}}), ok));
    }
    for (int k : {4, 6}) {
        const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(k, k);
        r.add(check_abs("wick.ones.k" + std::to_string(k), "Wick formula on the all-ones covariance",
                        kv({{"k", k}}), k == 4 ? 3.0 : 15.0, wick_moment(ones), 0.0));
    }
    Eigen::MatrixXd cov(4, 4);
    cov << 2.0, 0.5, 0.3, 0.1, 0.5, 1.5, 0.4, 0.2, 0.3, 0.4, 1.2, 0.6, 0.1, 0.2, 0.6, 1.0;
    const double three_terms = cov(0, 1) * cov(2, 3) + cov(0, 2) * cov(1, 3) + cov(0, 3) * cov(1, 2);
    r.add(check_abs("wick.general4", "Wick formula, three pairings", "k=4", three_terms, wick_moment(cov), 1e-14));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    r.add(check_abs("wick.identity4", "independent coordinates have zero product moment", "k=4", 0.0,
                    wick_moment(id), 0.0));

    const std::int64_t m = c.mc > 0 ? c.mc : 100000;
    for (int k : {4, 6}) {
        const auto x = wick_mc_crosscheck(Eigen::MatrixXd::Ones(k, k), m, seed_of(c) + k);
        r.add(check_abs("wick.mc.ones" + std::to_string(k), "Monte Carlo vs Wick within 4 stderr",
                        kv({{"k", k}, {"m", static_cast<double>(m)}}), x.exact, x.mc, 4.0 * x.stderr));
    }
    const auto x = wick_mc_crosscheck(cov, m, seed_of(c) + 1);
    r.add(check_abs("wick.mc.general4", "Monte Carlo vs Wick within 4 stderr", kv({{"m", static_cast<double>(m)}}),
                    x.exact, x.mc, 4.0 * x.stderr));
    return r;
}

// ---------------------------------------------------------------- laplace

Report suite_laplace(const RunConfig& c) {
    Report r;
    const double tol = tol_or(c, 1e-6);
    for (double a0 : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double u : {0.05, 0.3, 1.0, 2.5, 7.0}) {
            // split the lambda range at 1/delta so both pieces go through quadrature
            const TimeKernel head{a0, 0.4, false}, tail{a0, 0.4, true};
            const double v = time_kernel_eval(head, u) + time_kernel_eval(tail, u);
            const std::string in = kv({{"alpha0", a0}, {"u", u}});
            r.add(check_abs("laplace.power.a" + fmt(a0) + ".u" + fmt(u), "Gamma integral of |u|^{-alpha0}", in,
                            std::pow(u, -a0), v, tol));
            r.add(check_abs("laplace.incomplete.a" + fmt(a0) + ".u" + fmt(u), "truncated kernel by incomplete Gamma",
                            in, time_kernel_closed(head, u), time_kernel_eval(head, u), tol));
        }
    Rng rng(0x1a91ace, 0);
    for (int i = 0; i < 50; ++i) {
        const double u = 0.05 + 2.95 * rng.uniform();
        const double v = -3.0 + 6.0 * rng.uniform();
        const double a0 = 0.05 + 0.9 * rng.uniform();
        const auto closed = complex_power(a0, u, v);
        const auto quad = complex_power_laplace(a0, u, v);
        char id[32];
        std::snprintf(id, sizeof id, "laplace.complex.%02d", i);
        r.add(check_abs(id, "principal branch of (u+iv)^{-alpha0} vs Laplace quadrature",
                        kv({{"alpha0", a0}, {"u", u}, {"v", v}}), 0.0, std::abs(closed - quad), tol));
    }
    // the positive part of (u + iv)^{-a0} and its modulus bound
    bool ok = true;
    for (double u : {0.0, 0.1, 1.0})
        for (double v : {-5.0, -0.2, 0.3, 4.0}) {
            const auto z = complex_power(0.5, u, v);
            ok = ok && z.real() >= 0.0 && std::abs(z) <= std::pow(std::hypot(u, v), -0.5) * (1 + 1e-14);
        }
    r.add(check_true("laplace.complex.positive_real_part", "Re (u+iv)^{-alpha0} >= 0 for u >= 0", "alpha0=0.5", ok));
    return r;
}

// ---------------------------------------------------------------- s2

Report suite_s2(const RunConfig& c) {
    Report r;
    const double rtol = tol_or(c, 1e-3);
    const std::vector<std::pair<std::string, SpectralMeasure>> measures{{"dirac", SpectralMeasure::dirac()},
                                                                       {"atomic", reference_atomic()}};
    for (const auto& [name, m] : measures)
        for (double a0 : {0.3, 0.5, 0.7})
            for (double t : {0.5, 1.0}) {
                MomentSpec s;
                s.n = 1;
                s.t = t;
                s.measure = m;
                s.alpha0 = a0;
                const auto direct = s2n_expectation_direct(s);
                r.add(check_rel("s2.routes." + name + ".a" + fmt(a0) + ".t" + fmt(t),
                                "E S_2 by direct quadrature vs reduced integral", kv({{"alpha0", a0}, {"t", t}}),
                                s2_expectation_reduced(t, m, a0), direct.value, rtol));
            }
    const std::vector<std::pair<std::string, SpectralMeasure>> homog{
        {"dirac", SpectralMeasure::dirac()}, {"riesz", SpectralMeasure::riesz(c.alpha, 1.0, 1)}};
    for (const auto& [name, m] : homog)
        for (double a0 : {0.3, 0.5, 0.7}) {
            const double al = m.alpha();
            const double ratio = s2_expectation_reduced(2.0, m, a0) / s2_expectation_reduced(1.0, m, a0);
            r.add(check_rel("s2.scaling." + name + ".a" + fmt(a0), "E S_2(t=2)/E S_2(t=1) = 2^{4-alpha-alpha0}",
                            kv({{"alpha", al}, {"alpha0", a0}}), std::pow(2.0, 4.0 - al - a0), ratio, rtol));
        }
    for (double a0 : {0.3, 0.5, 0.7}) {
        const double exact = std::tgamma(1 - a0) / (2 * std::tgamma(4 - a0));
        r.add(check_rel("s2.closed.dirac.a" + fmt(a0), "Gamma(1-alpha0)/(2 Gamma(4-alpha0)) at t=1",
                        kv({{"alpha0", a0}}), exact, s2_expectation_reduced(1.0, SpectralMeasure::dirac(), a0),
                        tol_or(c, 1e-7)));
        const auto one = SpectralMeasure::atomic({{{0.0}, 1.0}}, 1);
        r.add(check_rel("s2.closed.constant.a" + fmt(a0), "constant covariance: 1/((2-a0)(3-a0)(4-a0))",
                        kv({{"alpha0", a0}}), 1.0 / ((2 - a0) * (3 - a0) * (4 - a0)),
                        s2_expectation_reduced(1.0, one, a0), tol_or(c, 1e-9)));
    }
    MomentSpec s;
    s.measure = SpectralMeasure::dirac();
    s.alpha0 = 0.5;
    r.add(check_abs("s2.odd_order", "odd chaos orders vanish", "order=3", 0.0, stratonovich_expectation(3, s).value,
                    0.0));
    const auto l2 = l2_norm_chaos(s);
    r.add(check_rel("s2.l2_norm.dirac", "n=1 chaos norm 1/((1-a0)(2-a0)(3-a0))", "alpha0=0.5",
                    1.0 / (0.5 * 1.5 * 2.5), l2.value, tol_or(c, 1e-7)));
    return r;
}

// ---------------------------------------------------------------- bound

Report suite_bound(const RunConfig& c) {
    Report r;
    const auto dirac = SpectralMeasure::dirac();
    const NormTriple norms = compute_norms(c.theta, dirac, c.alpha0);
    for (int n = 1; n <= 4; ++n) {
        const auto pairings = enumerate_pairings(n);
        const std::vector<NormTriple> ns(2 * n, norms);
        std::size_t total = 0, valid = 0, finite = 0;
        for (int n1 = 0; n1 <= 2 * n; ++n1)
            for (const auto& p : pairings) {
                const auto cert = theorem3_certificate(n1, 2 * n - n1, p, ns);
                ++total;
                valid += certificate_valid(cert, n) ? 1 : 0;
                finite += std::isfinite(cert.bound) && cert.bound > 0.0 ? 1 : 0;
            }
        const std::string in = kv({{"n", n}, {"cases", static_cast<double>(total)}});
        r.add(check_abs("bound.certificates.n" + std::to_string(n), "Q0/Q1/Q2 structure of the bound", in,
                        static_cast<double>(total), static_cast<double>(valid), 0.0));
        r.add(check_abs("bound.finite.n" + std::to_string(n), "bound is finite and positive", in,
                        static_cast<double>(total), static_cast<double>(finite), 0.0));
    }
    const std::pair<BaseCase, const char*> cases[] = {
        {BaseCase::Split11, "split11"}, {BaseCase::Left20, "left20"}, {BaseCase::Right02, "right02"}};
    const std::vector<std::pair<std::string, SpectralMeasure>> measures{
        {"dirac", dirac}, {"riesz", SpectralMeasure::riesz(c.alpha, 1.0, 1)}};
    for (const auto& [mname, m] : measures)
        for (const auto& [which, name] : cases) {
            const auto dm = bound_domination_check(which, c.theta, m, c.alpha0);
            r.add(check_le(std::string("bound.base.") + mname + "." + name, "quadrature lhs <= certificate bound",
                           kv({{"theta", c.theta}, {"alpha0", c.alpha0}}), dm.bound * (1 + 1e-3), dm.lhs));
        }
    const auto left = theorem3_certificate(2, 0, PairPartition{{{1, 2}}}, {norms, norms});
    r.add(check_true("bound.base.left20_structure", "Q0={1}, Q1={2}", "n1=2;n2=0",
                     left.q0 == std::vector<int>{1} && left.q1.size() == 1 && left.q1[0].index == 2));
    const auto split = theorem3_certificate(1, 1, PairPartition{{{1, 2}}}, {norms, norms});
    r.add(check_true("bound.base.split11_structure", "Q2={1,2}", "n1=1;n2=1",
                     split.q0.empty() && split.q1.empty() && split.q2.size() == 2));
    return r;
}

// ---------------------------------------------------------------- lemma-a

Report suite_lemma_a(const RunConfig& c) {
    Report r;
    const auto dirac = SpectralMeasure::dirac();
    const double rtol = tol_or(c, 1e-3);
    {
        const auto l = lemma_a2(1.0, dirac, 0.5);
        r.add(check_rel("lemma_a.a2.dirac", "two-term spectral form vs direct 4-d quadrature",
                        "theta=1;alpha0=0.5", l.direct, l.closed, rtol));
    }
    {
        const auto riesz = SpectralMeasure::riesz(c.alpha, 1.0, 1);
        const auto l = lemma_a2(1.0, riesz, 0.5);
        r.add(check_rel("lemma_a.a2.riesz", "two-term spectral form vs direct 4-d quadrature",
                        kv({{"theta", 1}, {"alpha0", 0.5}, {"alpha", c.alpha}}), l.direct, l.closed, rtol));
    }
    const std::vector<double> thetas{4, 8, 16, 32};
    const double slope = lemma_a3_rate(thetas, dirac, 0.5);
    r.add(check_abs("lemma_a.a3.slope_band", "log-log slope in [-2.15, -1.85]", "thetas=4:8:16:32;alpha0=0.5", -2.0,
                    slope, 0.15));
    r.add(check_abs("lemma_a.a3.slope_exact", "log-log slope = alpha0 + alpha - 4", "thetas=4:8:16:32;alpha0=0.5",
                    0.5 + 1.0 - 4.0, slope, 1e-6));
    for (double a0 : {0.3, 0.5, 0.7})
        for (double th : {0.5, 2.0}) {
            const std::string in = kv({{"theta", th}, {"alpha0", a0}});
            r.add(check_rel("lemma_a.a1.dirac.a" + fmt(a0) + ".th" + fmt(th), "Gamma(1-a0) theta^{a0-1} / 2", in,
                            0.5 * std::tgamma(1 - a0) * std::pow(th, a0 - 1), lemma_a1(th, dirac, a0),
                            tol_or(c, 1e-8)));
            r.add(check_rel("lemma_a.a2closed.dirac.a" + fmt(a0) + ".th" + fmt(th),
                            "Gamma(1-a0) theta^{a0-3} / 4", in, 0.25 * std::tgamma(1 - a0) * std::pow(th, a0 - 3),
                            lemma_a2_closed(th, dirac, a0), tol_or(c, 1e-8)));
        }
    const auto atom = reference_atomic();
    r.add(check_rel("lemma_a.a1.oscillatory", "inner time transform by quadrature", "theta=2;alpha0=0.5",
                    lemma_a1(2.0, atom, 0.5), lemma_a1_oscillatory(2.0, atom, 0.5), tol_or(c, 1e-6)));
    DataSeries ds{"lemma_a3_rate", "theta", "lemma_a2_closed", {}};
    for (int k = 0; k <= 6; ++k) {
        const double th = std::ldexp(1.0, k);
        ds.points.emplace_back(th, lemma_a2_closed(th, dirac, 0.5));
    }
    r.series.push_back(std::move(ds));
    return r;
}

// ---------------------------------------------------------------- representation

Report suite_representation(const RunConfig& c) {
    Report r;
    const std::int64_t m = c.mc > 0 ? c.mc : 2000;
    const auto res = representation_check_n1(c.theta, reference_atomic(), c.alpha0, m, seed_of(c), 512);
    const std::string in = kv({{"theta", c.theta}, {"alpha0", c.alpha0}, {"m", static_cast<double>(m)}, {"K", 512},
                               {"stderr", res.stderr}, {"grid_tol", res.quad_tolerance}, {"T", res.horizon}});
    r.add(check_abs("representation.n1", "Laplace-transformed moment vs path functional", in, res.lhs, res.rhs,
                    3.0 * res.stderr + res.quad_tolerance));
    r.add(check_abs("representation.n1.coarse", "same paths on the doubled step", in, res.lhs, res.rhs_coarse,
                    3.0 * res.stderr + 3.0 * res.quad_tolerance));
    return r;
}

// ---------------------------------------------------------------- localtime

Report suite_localtime(const RunConfig& c) {
    Report r;
    const auto atom = reference_atomic();
    const std::uint64_t seed = seed_of(c);
    const int m = c.mc > 0 ? static_cast<int>(c.mc) : 10000;
    const auto ens = simulate_paths(1, 1.0, 32, m, seed);
    for (double th : {1.0, 2.0})
        for (double a0 : {0.3, 0.5}) {
            const auto e = complex_mean(ens, th, a0, atom);
            const std::string in = kv({{"theta", th}, {"alpha0", a0}, {"m", m}, {"K", 32}, {"stderr", e.stderr}});
            const std::string tag = ".th" + fmt(th) + ".a" + fmt(a0);
            r.add(check_le("localtime.positivity.re" + tag, "-Re E H <= 3 stderr", in, 3.0 * e.stderr,
                           -e.value.real()));
            r.add(check_le("localtime.positivity.im" + tag, "|Im E H| <= 3 stderr", in, 3.0 * e.stderr,
                           std::abs(e.value.imag())));
        }
    const auto rep = kernel_chain_check(chain_samples(1000000, seed + 1), c.theta, c.alpha0);
    r.add(check_abs("localtime.chain", "pointwise kernel dominations, exact failures",
                    kv({{"samples", static_cast<double>(rep.samples)}, {"theta", c.theta}, {"alpha0", c.alpha0},
                        {"max_violation", rep.max_violation}}),
                    0.0, static_cast<double>(rep.failures), 0.0));

    // backends and fast kernels agree
    const auto small = simulate_paths(1, 1.0, 16, 64, seed + 2);
    const auto ser = complex_mean(small, 1.5, 0.5, atom, 0.0, Backend::Serial);
    const auto par = complex_mean(small, 1.5, 0.5, atom, 0.0, Backend::Parallel);
    r.add(check_abs("localtime.backend.mean", "serial vs parallel ensemble mean", "m=64;K=16", ser.value.real(),
                    par.value.real(), 1e-12 * std::abs(ser.value.real())));
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const auto p = simulate_path(1, 2.0, 64, seed + 3, i);
        std::vector<double> a, b;
        for (int stride : {1, 2}) {
            complex_cumulative_serial(p, 2.0, 0.5, atom, stride, a);
            complex_cumulative_fast(p, 2.0, 0.5, atom, stride, b);
            for (std::size_t k = 0; k < a.size(); ++k)
                worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
        }
    }
    r.add(check_abs("localtime.backend.cumulative", "vectorized vs reference pair sums", "paths=4;K=64", 0.0, worst,
                    1e-9));
    {
        const auto p = simulate_path(1, 1.0, 32, seed + 4, 0);
        const auto z = hamiltonian_complex(p, 2.0, 0.5, atom);
        std::vector<double> h;
        complex_cumulative_serial(p, 2.0, 0.5, atom, 1, h);
        r.add(check_abs("localtime.cumulative_endpoint", "cumulative sum at t equals the full functional", "K=32",
                        z.real(), h.back(), 1e-10 * std::abs(z.real())));
        r.add(check_abs("localtime.complex_imag_single_path", "imaginary part cancels by symmetry", "K=32", 0.0,
                        z.imag(), 1e-10 * std::abs(z.real())));
    }
    {
        bool sym = true, dom = true;
        for (int i = 0; i < 8; ++i) {
            const auto p1 = simulate_path(1, 1.0, 32, seed + 5, 2 * i);
            const auto p2 = simulate_path(1, 1.0, 32, seed + 5, 2 * i + 1);
            const double a = mutual_local_time(p1, p2, atom, 0.1), b = mutual_local_time(p2, p1, atom, 0.1);
            sym = sym && std::abs(a - b) <= 1e-12 * std::abs(a);
            const double tf = hamiltonian_time_frac(p1, 1.5, 1.0, 0.5, atom, 0.1);
            dom = dom && tf <= std::pow(1.5, -0.5) * hamiltonian_time_only(p1, 0.5, atom, 0.1) * (1 + 1e-12) &&
                  tf <= hamiltonian_beta_only(p1, 1.0, 0.5, atom, 0.1) * (1 + 1e-12);
        }
        r.add(check_true("localtime.mutual_symmetry", "mutual local time is symmetric", "pairs=8", sym));
        r.add(check_true("localtime.frac_domination", "time-fractional functional below both dominating ones",
                         "paths=8", dom));
    }
    TrendSpec ts;
    ts.measure = atom;
    ts.eps = 0.0;
    ts.seed = seed + 6;
    const auto trend = exp_moment_trend(ts);
    DataSeries ds{"exp_moment_trend", "t", "t^{-1} log E exp(b t^{a0-1} H)", {}};
    bool finite = true;
    for (const auto& p : trend) {
        ds.points.emplace_back(p.t, p.value);
        finite = finite && std::isfinite(p.value) && std::isfinite(p.stderr) && p.value > 0.0;
    }
    r.add(check_true("localtime.exp_moment_trend", "finite positive exponential-moment rates",
                     kv({{"b", ts.b}, {"m", ts.m}, {"K", ts.K}}), finite));
    r.series.push_back(std::move(ds));
    return r;
}

// ---------------------------------------------------------------- variational

Report suite_variational(const RunConfig& c) {
    Report r;
    const auto dirac = SpectralMeasure::dirac();
    const GridConfig grid;
    const std::string gin = kv({{"S", grid.S}, {"L", grid.L}, {"hx", grid.hx}});
    const VariationalProblem pm(Functional::M, dirac, 0.5, 0.0, grid);
    const auto best = solve(pm, gaussian_init(pm));
    r.add(check_true("variational.M.converged", "solver converged", gin, best.converged));
    r.add(check_abs("variational.M.normalized", "per-slice L2 normalization", gin, 0.0,
                    best.field.max_normalization_error(), 1e-10));
    double best_trial = -INFINITY;
    for (const auto& t : trial_library()) {
        const double v = pm.value(field_from(grid, t.f));
        best_trial = std::max(best_trial, v);
        r.add(check_le("variational.M.trial." + t.name, "optimum >= trial field", gin, best.value, v));
    }
    double prev = -INFINITY;
    for (double delta : {0.5, 0.25, 0.125}) {
        const auto e = solve(Functional::Edelta, dirac, 0.5, delta, grid);
        r.add(check_le("variational.Edelta.monotone.d" + fmt(delta), "E_delta increases as delta decreases",
                       with(gin, kv({{"delta", delta}})), e.value, prev));
        prev = e.value;
    }
    const auto rc = rescale_covariance_check(dirac, 0.5, grid);
    r.add(check_rel("variational.rescale.dirac", "M(gamma/2)/M(gamma) = 2^{alpha/(4-alpha)}",
                    with(gin, "alpha=1"), rc.predicted_ratio, rc.ratio, 1e-2));
    {
        GridConfig rg;
        rg.hx = 0.1;
        rg.L = 6.0;
        const auto rr = rescale_covariance_check(SpectralMeasure::riesz(c.alpha, 1.0, 1), 0.5, rg);
        r.add(check_rel("variational.rescale.riesz", "M(gamma/2)/M(gamma) = 2^{alpha/(4-alpha)}",
                        kv({{"alpha", c.alpha}, {"hx", rg.hx}, {"L", rg.L}}), rr.predicted_ratio, rr.ratio, 1e-2));
    }
    const auto e0 = solve(Functional::E0, dirac, 0.5, 0.0, grid);
    r.add(check_rel("variational.E0_from_M", "E0 from M through the scaling relation", with(gin, "alpha=1"),
                    relation_E0_M(best.value, 1.0), e0.value, 1e-2));
    {
        GridConfig pc;
        pc.boundary = Boundary::Periodic;
        pc.L = 2.0;
        pc.hx = 0.1;
        pc.S = 4;
        const auto one = SpectralMeasure::atomic({{{0.0}, 1.0}}, 1);
        const FieldGrid flat = field_from(pc, [](double, double) { return 1.0; });
        r.add(check_abs("variational.flat_field", "constant field under constant covariance", "alpha0=0", 1.0,
                        eval_functional(Functional::E0, flat, one, 0.0), 1e-12));
    }
    {
        bool raised = throws_kind(
            [&] {
                FieldGrid g = FieldGrid::from(grid);
                for (double& v : g.g) v = 1.0;
                (void)pm.value(g);
            },
            ErrorKind::NotNormalized);
        r.add(check_true("variational.rejects_unnormalized", "unnormalized fields are rejected", gin, raised));
    }
    return r;
}

// ---------------------------------------------------------------- asympt

Report suite_asympt(const RunConfig&) {
    Report r;
    double worst = 0.0;
    for (double a : {0.3, 0.7, 1.0, 1.5})
        for (double M : {0.1, 0.63, 2.0, 10.0})
            worst = std::max(worst, std::abs(relation_M_E0(relation_E0_M(M, a), a) - M) / M);
    r.add(check_abs("asympt.relation_roundtrip", "E0 <-> M relation round trip", "grid=4x4", 0.0, worst, 1e-12));
    worst = 0.0;
    for (double a : {0.5, 1.0})
        for (double a0 : {0.3, 0.5, 0.7}) {
            RateInputs ri{a, a0, 1, 0.63, 0.0};
            ri.E0 = relation_E0_M(ri.M, a);
            for (int n = 1; n <= 8; ++n) {
                const double e = predict_moment_prefactor(n, ri), m = predict_moment_prefactor_M(n, ri);
                worst = std::max(worst, std::abs(e - m) / std::abs(m));
            }
        }
    r.add(check_abs("asympt.prefactor_routes", "moment prefactor through E0 equals the M route", "n=1..8", 0.0,
                    worst, 1e-12));
    {
        RateInputs ri{1.0, 0.5, 1, 0.63, 0.0};
        const auto p = predict_logEu_rate(ri);
        r.add(check_rel("asympt.rate_exponent", "time exponent (4-alpha-alpha0)/(3-alpha)", "alpha=1;alpha0=0.5",
                        1.25, p.exponent, 1e-15));
        r.add(check_true("asympt.conjecture_flag", "p-th moment pattern is flagged as conjecture", "p=2",
                         predict_logEup_rate(2, ri).conjecture && !p.conjecture));
        RateInputs bad{1.0, 1.2, 1, 0.63, 0.0};
        r.add(check_true("asympt.hypothesis", "alpha0 outside (0,1) is rejected", "alpha0=1.2",
                         throws_kind([&] { predict_logEu_rate(bad); }, ErrorKind::HypothesisViolated)));
    }
    const std::vector<double> bs{10, 30, 100, 300, 1000};
    for (auto [g, th] : std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {2, 1}, {2, 3}}) {
        const auto rates = mittag_leffler_rate(th, g, bs);
        const double target = g * std::pow(th, 1.0 / g);
        const std::string tag = ".g" + fmt(g) + ".th" + fmt(th);
        const double tol = g == 1 ? 1e-3 : 2e-2;
        r.add(check_rel("asympt.mittag_leffler" + tag, "b^{-1/g} log sum -> g theta^{1/g}",
                        kv({{"g", g}, {"theta", th}, {"b", 1000}}), target, rates.back().second, tol));
        DataSeries ds{"mittag_leffler_rate_g" + fmt(g) + "_th" + fmt(th), "b", "rate", {}};
        for (auto [b, v] : rates) ds.points.emplace_back(b, v);
        r.series.push_back(std::move(ds));
    }
    {
        bool mono = true;
        double prev = -INFINITY;
        for (double eta : {4.0, 2.0, 1.0, 0.5, 0.25}) {
            const double v = gamma_tail_negligibility(eta, 200, 0.5, 1.0);
            mono = mono && (prev == -INFINITY || v <= prev);
            prev = v;
        }
        r.add(check_true("asympt.gamma_tail_monotone", "tail exponent decreases as eta shrinks", "n=200", mono));
        const double v = gamma_tail_negligibility(0.5, 200, 1.0, 2.0);
        r.add(check_abs("asympt.gamma_tail_exponential", "alpha0=1: -c/eta^2 - log(c)/n", "eta=0.5;n=200;c=2",
                        -2.0 / 0.25 - std::log(2.0) / 200, v, 1e-9));
    }
    {
        const auto s = small_n_consistency(SpectralMeasure::dirac(), 0.5, {0.5, 1.0, 2.0});
        r.add(check_rel("asympt.small_n.exponent", "E S_2 grows like t^{4-alpha-alpha0}", "alpha=1;alpha0=0.5", 2.5,
                        s.fitted_exponent, 1e-6));
        r.add(check_rel("asympt.small_n.prefactor", "Gamma(1-a0)/(2 Gamma(4-a0))", "alpha0=0.5",
                        std::tgamma(0.5) / (2 * std::tgamma(3.5)), s.A, 1e-6));
    }
    return r;
}

using SuiteFn = std::function<Report(const RunConfig&)>;

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r{
        {"green", suite_green},         {"wick", suite_wick},           {"laplace", suite_laplace},
        {"s2", suite_s2},               {"bound", suite_bound},         {"lemma-a", suite_lemma_a},
        {"representation", suite_representation}, {"localtime", suite_localtime},
        {"variational", suite_variational},       {"asympt", suite_asympt}};
    return r;
}

} // namespace

SpectralMeasure reference_atomic() { return SpectralMeasure::atomic({{{0.0}, 1.0}, {{1.0}, 0.5}, {{-1.0}, 0.5}}, 1); }

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"green",          "wick",      "laplace",     "s2",    "bound",
                                            "lemma-a",        "representation", "localtime", "variational",
                                            "asympt"};
    return n;
}

Report run_suite(const std::string& name, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.suite = name;
    validate(c);
    Report out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.merge(registry().at(s)(cfg));
    } else {
        const auto it = registry().find(name);
        require(it != registry().end(), ErrorKind::ConfigError, "unknown suite '" + name + "'");
        out = it->second(cfg);
    }
    out.sort();
    return out;
}

} // namespace stratlab
