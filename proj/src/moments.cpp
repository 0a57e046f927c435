#include "stratlab/moments.hpp"

#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"
#include "stratlab/rng.hpp"
#include "stratlab/wavegreen.hpp"
#include "stratlab/wick.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace stratlab {

namespace {

constexpr double kPi = M_PI;

double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

void require_stratonovich(const SpectralMeasure& m, double alpha0) {
    require(alpha0 >= 0.0 && alpha0 < 1.0, ErrorKind::InvalidArgument, "alpha0 in [0,1)");
    if (m.is_riesz() || m.is_dirac())
        require(m.alpha() + alpha0 < 2.0, ErrorKind::Divergent, "Stratonovich condition fails (alpha + alpha0 >= 2)");
}

// radial density K rho^{alpha-1} of a homogeneous measure
double homogeneous_prefactor(const SpectralMeasure& m) {
    if (m.is_dirac()) return 1.0 / kPi;
    const auto& r = std::get<RieszRadial>(m.variant());
    return r.c * sphere_area(r.d);
}

// rho^{a0-4} Psi(t rho), with the rho -> 0 series below t rho = 2
double s2_radial_profile(double rho, double t, double a0) {
    const double A = t * rho;
    if (A <= 2.0) {
        double sum = 0.0, fact = 1.0;
        for (int k = 0; k < 30; ++k) {
            if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
            const double b = 2.0 * k + 2.0 - a0;
            const double term = std::pow(t, 2.0 * k + 4.0 - a0) * std::pow(rho, 2.0 * k) / (fact * b * (b + 1) * (b + 2));
            sum += (k % 2 == 0) ? term : -term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::pow(rho, a0 - 4.0) * sine_integral_weighted(A, a0);
}

double gamma_smooth(const SpectralMeasure& m, double eps, const Point& x) {
    if (m.is_dirac()) return std::exp(-x[0] * x[0] / (4.0 * eps)) / std::sqrt(4.0 * kPi * eps);
    return gamma_eval(m, x);
}

} // namespace

double sine_integral(double a, double alpha0) {
    require(a > 0.0, ErrorKind::InvalidArgument, "sine_integral: a > 0");
    auto s = [](double u) { return std::sin(u); };
    const double head = quad::power_singular(s, alpha0, std::min(a, kPi), 1e-14).value;
    if (a <= kPi) return head;
    auto f = [&](double u) { return std::sin(u) * std::pow(u, -alpha0); };
    return head + quad::half_periods(f, kPi, a, kPi, 1e-14).value;
}

double sine_integral_weighted(double A, double alpha0) {
    require(A >= 0.0, ErrorKind::InvalidArgument, "sine_integral_weighted: A >= 0");
    if (A == 0.0) return 0.0;
    auto g = [&](double u) { return 0.5 * (A - u) * (A - u) * std::sin(u); };
    const double head = quad::power_singular(g, alpha0, std::min(A, kPi), 1e-14).value;
    if (A <= kPi) return head;
    auto f = [&](double u) { return g(u) * std::pow(u, -alpha0); };
    return head + quad::half_periods(f, kPi, A, kPi, 1e-14).value;
}

double s2_expectation_reduced(double t, const SpectralMeasure& m, double alpha0) {
    require(t > 0.0, ErrorKind::InvalidArgument, "s2_expectation_reduced: t > 0");
    require_stratonovich(m, alpha0);
    const double a0 = alpha0;
    auto F = [&](double rho) { return s2_radial_profile(rho, t, a0); };
    if (!(m.is_riesz() || m.is_dirac())) return m.radial_integral(F, 1e-11);

    // [0, R] by quadrature, [R, inf) from Psi(A) = Phi_inf A^2/2 + c1 A + c0 + O(A^{-a0})
    const double al = m.alpha();
    const double K = homogeneous_prefactor(m);
    const double R = 80.0 / t;
    double head;
    if (m.is_dirac()) {
        std::vector<double> cuts;
        for (int k = 1; k < 16; ++k) cuts.push_back(k * R / 16.0);
        head = quad::gk_split(F, 0.0, R, cuts, 1e-12).value;
    } else {
        head = quad::power_singular(F, 1.0 - al, R, 1e-12).value;
    }
    const double phi_inf = std::tgamma(1.0 - a0) * std::cos(0.5 * kPi * a0);
    const double c1 = -std::tgamma(2.0 - a0) * std::sin(0.5 * kPi * a0);
    const double c0 = -0.5 * std::tgamma(3.0 - a0) * std::cos(0.5 * kPi * a0);
    const double e = al + a0;
    const double tail = 0.5 * phi_inf * t * t * std::pow(R, e - 2.0) / (2.0 - e) +
                        c1 * t * std::pow(R, e - 3.0) / (3.0 - e) + c0 * std::pow(R, e - 4.0) / (4.0 - e);
    return K * (head + tail);
}

namespace {

MomentValue direct_quadrature_n1(const MomentSpec& s) {
    const double t = s.t, a0 = s.alpha0;
    MomentValue out;
    auto run = [&](double tol) {
        if (s.measure.is_dirac()) {
            // x2 = x1 collapses the space integral: G(v, 0) = 1/2
            auto inner = [&](double s1) {
                auto one = [](double) { return 1.0; };
                const double x1 = quad::gk([&](double x) { return green_eval({1, 0.0}, s1, x); }, -s1, s1, tol).value;
                return x1 * 0.5 * quad::power_singular(one, a0, t - s1, tol).value;
            };
            return quad::gk(inner, 0.0, t, tol).value;
        }
        // Y(v) = ∫ G(v, y) gamma(y) dy
        auto Y = [&](double v) {
            if (s.measure.is_riesz()) {
                const double cp = s.measure.riesz_constant();
                auto half = [](double) { return 0.5; };
                return 2.0 * cp * quad::power_singular(half, s.measure.alpha(), v, tol).value;
            }
            return quad::gk([&](double y) { return 0.5 * gamma_eval(s.measure, y); }, -v, v, tol).value;
        };
        // ∫_0^{t-v} ∫ G(s1, x1) dx1 ds1
        auto X = [&](double v) {
            return quad::gk(
                       [&](double s1) {
                           return quad::gk([&](double x) { return green_eval({1, 0.0}, s1, x); }, -s1, s1, tol)
                               .value;
                       },
                       0.0, t - v, tol)
                .value;
        };
        return quad::power_singular([&](double v) { return Y(v) * X(v); }, a0, t, tol).value;
    };
    const double fine = run(1e-10);
    const double coarse = run(1e-7);
    out.value = fine;
    out.error_estimate = std::abs(fine - coarse) + 1e-11 * std::abs(fine);
    return out;
}

// tensor Gauss-Legendre over increments (u_l, z_l), G(u, u z) dy = u/2 dz in d = 1
double direct_tensor_n2(const MomentSpec& s, int nodes, std::int64_t& evals) {
    const double t = s.t, a0 = s.alpha0, q = 1.0 / (1.0 - a0);
    std::vector<double> gx, gw;
    quad::gauss_legendre(nodes, gx, gw);
    const auto pairings = enumerate_pairings(2);
    const int N = nodes;
    std::vector<int> idx(8, 0);
    double total = 0.0;
    const std::int64_t count = static_cast<std::int64_t>(std::pow(N, 8));
    for (std::int64_t c = 0; c < count; ++c) {
        std::int64_t r = c;
        for (int l = 0; l < 8; ++l) {
            idx[l] = static_cast<int>(r % N);
            r /= N;
        }
        double rem = t, jac = 1.0, sl = 0.0, xl = 0.0;
        std::array<double, 5> sv{}, xv{};
        for (int l = 0; l < 4; ++l) {
            const double w = 0.5 * (gx[idx[l]] + 1.0);
            const double u = rem * std::pow(w, q);
            jac *= 0.5 * gw[idx[l]] * rem * q * std::pow(w, q - 1.0);
            const double z = gx[idx[4 + l]];
            jac *= gw[idx[4 + l]] * 0.5 * u;
            sl += u;
            xl += u * z;
            sv[l + 1] = sl;
            xv[l + 1] = xl;
            rem -= u;
        }
        double sum = 0.0;
        for (const auto& D : pairings) {
            double p = 1.0;
            for (const auto& [j, k] : D.pairs) {
                const double ds = sv[k] - sv[j];
                p *= std::pow(ds, -a0) * gamma_eval(s.measure, xv[k] - xv[j]);
            }
            sum += p;
        }
        total += jac * sum;
    }
    evals += count;
    return total;
}

Point sample_green_increment(Rng& rng, int d, double u, double eta) {
    Point y(d, 0.0);
    if (d == 1) {
        y[0] = u * (2.0 * rng.uniform() - 1.0);
    } else if (d == 2) {
        const double U = rng.uniform();
        const double r = u * std::sqrt(1.0 - (1.0 - U) * (1.0 - U));
        const double phi = 2.0 * kPi * rng.uniform();
        y[0] = r * std::cos(phi);
        y[1] = r * std::sin(phi);
    } else {
        double n2 = 0.0;
        Point z(3);
        for (auto& v : z) {
            v = rng.normal();
            n2 += v * v;
        }
        const double n = std::sqrt(n2);
        const double se = std::sqrt(eta);
        for (int k = 0; k < 3; ++k) y[k] = u * z[k] / n + se * rng.normal();
    }
    return y;
}

MomentValue direct_monte_carlo(const MomentSpec& s) {
    require(s.budget >= 64, ErrorKind::InvalidArgument, "monte_carlo: budget >= 64 samples");
    require(s.delta > 0.0, ErrorKind::InvalidArgument, "monte_carlo: needs delta > 0");
    require(!s.measure.is_dirac() || s.eps > 0.0, ErrorKind::InvalidArgument, "monte_carlo: DiracSpace needs eps > 0");
    require(s.d == s.measure.dim(), ErrorKind::DimensionMismatch, "monte_carlo: measure dimension");
    require(s.n <= 4, ErrorKind::OrderTooLarge, "monte_carlo: n <= 4");
    const int n2 = 2 * s.n;
    const auto pairings = enumerate_pairings(s.n);
    const TimeKernel k1{s.alpha0, s.delta, false}, k2{s.alpha0, 0.5 * s.delta, false};
    double vol = std::pow(s.t, n2);
    for (int k = 2; k <= n2; ++k) vol /= k;
    const double r = std::pow(2.0, -(1.0 - s.alpha0));
    // DiracSpace: the mollifier bias scales like eps^{(1-a0)/2}; halving delta and quartering eps
    // moves both error terms by the same factor, so one Richardson step removes both
    const double eps1 = s.eps, eps2 = 0.25 * s.eps;

    constexpr int kBatches = 32;
    const std::int64_t per = (s.budget + kBatches - 1) / kBatches;
    std::vector<double> m1(kBatches), m2(kBatches);
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < kBatches; ++b) {
        Rng rng(s.seed, static_cast<std::uint64_t>(b));
        std::vector<double> sv(n2 + 1), u(n2 + 1);
        std::vector<Point> xv(n2 + 1, Point(s.d, 0.0));
        double acc1 = 0.0, acc2 = 0.0;
        for (std::int64_t i = 0; i < per; ++i) {
            for (int l = 1; l <= n2; ++l) sv[l] = s.t * rng.uniform();
            std::sort(sv.begin() + 1, sv.end());
            sv[0] = 0.0;
            double w = vol;
            for (int l = 1; l <= n2; ++l) {
                u[l] = sv[l] - sv[l - 1];
                w *= u[l];
                const Point y = sample_green_increment(rng, s.d, u[l], s.eta);
                for (int c = 0; c < s.d; ++c) xv[l][c] = xv[l - 1][c] + y[c];
            }
            double sum1 = 0.0, sum2 = 0.0;
            for (const auto& D : pairings) {
                double p1 = 1.0, p2 = 1.0;
                for (const auto& [j, k] : D.pairs) {
                    Point dx(s.d);
                    for (int c = 0; c < s.d; ++c) dx[c] = xv[k][c] - xv[j][c];
                    const double ds = sv[k] - sv[j];
                    if (s.measure.is_dirac()) {
                        p1 *= time_kernel_closed(k1, ds) * gamma_smooth(s.measure, eps1, dx);
                        p2 *= time_kernel_closed(k2, ds) * gamma_smooth(s.measure, eps2, dx);
                    } else {
                        const double g = gamma_smooth(s.measure, s.eps, dx);
                        p1 *= time_kernel_closed(k1, ds) * g;
                        p2 *= time_kernel_closed(k2, ds) * g;
                    }
                }
                sum1 += p1;
                sum2 += p2;
            }
            acc1 += w * sum1;
            acc2 += w * sum2;
        }
        m1[b] = acc1 / per;
        m2[b] = acc2 / per;
    }
    std::vector<double> ext(kBatches);
    for (int b = 0; b < kBatches; ++b) ext[b] = (m2[b] - r * m1[b]) / (1.0 - r);
    const double mean = std::accumulate(ext.begin(), ext.end(), 0.0) / kBatches;
    double var = 0.0;
    for (double e : ext) var += (e - mean) * (e - mean);
    var /= (kBatches - 1);
    const double mean2 = std::accumulate(m2.begin(), m2.end(), 0.0) / kBatches;
    MomentValue out;
    out.value = mean;
    out.stderr = std::sqrt(var / kBatches);
    out.bias_estimate = std::abs(mean - mean2);
    out.error_estimate = 3.0 * out.stderr;
    out.evaluations = per * kBatches;
    return out;
}

} // namespace

MomentValue s2n_expectation_direct(const MomentSpec& spec) {
    require(spec.n >= 1, ErrorKind::InvalidArgument, "s2n: n >= 1");
    require(spec.t > 0.0, ErrorKind::InvalidArgument, "s2n: t > 0");
    require_stratonovich(spec.measure, spec.alpha0);
    if (spec.method == MomentMethod::MonteCarlo) return direct_monte_carlo(spec);
    require(spec.n <= 2, ErrorKind::OrderTooLarge, "s2n quadrature: n <= 2");
    require(spec.d == 1 && spec.measure.dim() == 1, ErrorKind::DimensionMismatch, "s2n quadrature: d = 1 only");
    if (spec.n == 1) return direct_quadrature_n1(spec);
    require(!spec.measure.is_dirac(), ErrorKind::InvalidArgument,
            "s2n quadrature: n = 2 with DiracSpace needs the Monte Carlo method");
    const int nodes = spec.budget > 0 ? static_cast<int>(spec.budget) : 6;
    require(nodes >= 4 && nodes <= 10, ErrorKind::BudgetExceeded, "s2n quadrature: 4 <= nodes <= 10");
    MomentValue out;
    out.value = direct_tensor_n2(spec, nodes, out.evaluations);
    const double coarse = direct_tensor_n2(spec, nodes - 2, out.evaluations);
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

MomentValue stratonovich_expectation(int order, const MomentSpec& spec) {
    require(order >= 1, ErrorKind::InvalidArgument, "stratonovich_expectation: order >= 1");
    if (order % 2 == 1) return {};
    MomentSpec s = spec;
    s.n = order / 2;
    return s2n_expectation_direct(s);
}

ChaosNorm l2_norm_chaos(const MomentSpec& spec) {
    require(spec.n == 1, ErrorKind::OrderTooLarge, "l2_norm_chaos: n = 1 only");
    require(spec.t > 0.0, ErrorKind::InvalidArgument, "l2_norm_chaos: t > 0");
    require_stratonovich(spec.measure, spec.alpha0);
    const double t = spec.t, a0 = spec.alpha0;
    ChaosNorm out;
    if (spec.measure.is_dirac()) {
        // ∫ G(s1,x) G(s2,x) dx = min(s1,s2)/2
        auto inner = [&](double s1) {
            return quad::power_singular([&](double u) { return s1 - u; }, a0, s1, 1e-13).value;
        };
        out.value = quad::gk(inner, 0.0, t, 1e-12).value;
    } else {
        auto F = [&](double rho) {
            auto S = [&](double a) { return rho == 0.0 ? a : std::sin(rho * a) / rho; };
            auto inner = [&](double s1) {
                return quad::power_singular([&](double u) { return S(s1) * S(s1 - u); }, a0, s1, 1e-12).value;
            };
            return 2.0 * quad::gk(inner, 0.0, t, 1e-11).value;
        };
        out.value = spec.measure.radial_integral(F, 1e-10);
    }
    out.fitted_C = out.value / (t * t);
    return out;
}

} // namespace stratlab
