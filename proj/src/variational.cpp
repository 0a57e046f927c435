#include "stratlab/variational.hpp"

#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace stratlab {

std::string to_string(Functional k) {
    switch (k) {
    case Functional::M: return "M";
    case Functional::MHalf: return "M_half";
    case Functional::E0: return "E0";
    case Functional::Edelta: return "E_delta";
    case Functional::H: return "H";
    }
    return "?";
}

namespace {

int points_for(const GridConfig& c) {
    require(c.L > 0.0 && c.hx > 0.0, ErrorKind::InvalidArgument, "grid: L > 0, hx > 0");
    const int cells = static_cast<int>(std::lround(2.0 * c.L / c.hx));
    require(cells >= 4, ErrorKind::InvalidArgument, "grid: at least four cells");
    return c.boundary == Boundary::Dirichlet ? cells - 1 : cells;
}

// ∫∫ over [a, a+h] x [b, b+h] of |x - y|^{-p} with a - b = k h
double cell_power(int k, double h, double p) {
    auto F = [&](double z) { return std::pow(std::abs(z), 2.0 - p) / ((1.0 - p) * (2.0 - p)); };
    return F((k - 1) * h) + F((k + 1) * h) - 2.0 * F(k * h);
}

} // namespace

FieldGrid FieldGrid::from(const GridConfig& c, int slices_override) {
    FieldGrid f;
    f.S = slices_override > 0 ? slices_override : c.S;
    require(f.S >= 1, ErrorKind::InvalidArgument, "grid: S >= 1");
    f.X = points_for(c);
    f.hs = 1.0 / f.S;
    f.hx = c.hx;
    f.L = c.L;
    f.boundary = c.boundary;
    f.g.assign(static_cast<std::size_t>(f.S) * f.X, 0.0);
    return f;
}

double FieldGrid::x(int j) const { return boundary == Boundary::Dirichlet ? -L + (j + 1) * hx : -L + j * hx; }

double FieldGrid::slice_norm2(int s) const {
    double n = 0.0;
    for (int j = 0; j < X; ++j) n += at(s, j) * at(s, j);
    return n * hx;
}

void FieldGrid::normalize() {
    for (int s = 0; s < S; ++s) {
        const double n = std::sqrt(slice_norm2(s));
        require(n > 0.0, ErrorKind::NotNormalized, "field: zero slice cannot be normalized");
        for (int j = 0; j < X; ++j) at(s, j) /= n;
    }
}

double FieldGrid::max_normalization_error() const {
    double e = 0.0;
    for (int s = 0; s < S; ++s) e = std::max(e, std::abs(slice_norm2(s) - 1.0));
    return e;
}

double FieldGrid::outer_mass(double fraction) const {
    double mass = 0.0;
    for (int s = 0; s < S; ++s)
        for (int j = 0; j < X; ++j)
            if (std::abs(x(j)) > (1.0 - fraction) * L) mass += at(s, j) * at(s, j) * hx;
    return mass / S;
}

std::uint64_t FieldGrid::checksum() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : g) {
        const auto q = static_cast<std::int64_t>(std::llround(v * 1e9));
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>(q >> (8 * b)) & 0xffu;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

FieldGrid field_from(const GridConfig& c, const std::function<double(double, double)>& f, int slices_override) {
    FieldGrid g = FieldGrid::from(c, slices_override);
    for (int s = 0; s < g.S; ++s)
        for (int j = 0; j < g.X; ++j) g.at(s, j) = f((s + 0.5) * g.hs, g.x(j));
    g.normalize();
    return g;
}

VariationalProblem::VariationalProblem(Functional kind, const SpectralMeasure& m, double alpha0, double delta,
                                       const GridConfig& grid)
    : kind_(kind), grid_(grid) {
    require(m.dim() == 1, ErrorKind::DimensionMismatch, "variational: d = 1 space grids only");
    require(alpha0 >= 0.0 && alpha0 < 1.0, ErrorKind::InvalidArgument, "variational: alpha0 in [0,1)");
    S_ = kind == Functional::H ? 1 : grid.S;
    X_ = points_for(grid);
    const double hs = 1.0 / S_;

    // time: W_sr = ∫∫ over the (s, r) cell of the time kernel
    W_.assign(static_cast<std::size_t>(S_) * S_, 0.0);
    std::vector<double> lag(S_);
    if (kind == Functional::H) {
        lag[0] = 1.0;
    } else if (kind == Functional::Edelta) {
        require(delta > 0.0 && alpha0 > 0.0, ErrorKind::InvalidArgument, "E_delta: delta > 0, alpha0 > 0");
        const TimeKernel k{alpha0, delta, false};
        for (int l = 0; l < S_; ++l) {
            auto f = [&](double w) { return (hs - std::abs(w)) * time_kernel_closed(k, l * hs + w); };
            lag[l] = l == 0 ? 2.0 * quad::gk(f, 0.0, hs, 1e-13).value : quad::gk_split(f, -hs, hs, {0.0}, 1e-13).value;
        }
    } else {
        for (int l = 0; l < S_; ++l) lag[l] = alpha0 == 0.0 ? hs * hs : cell_power(l, hs, alpha0);
    }
    for (int s = 0; s < S_; ++s)
        for (int r = 0; r < S_; ++r) W_[s * S_ + r] = lag[std::abs(s - r)];

    // space: G_ij = ∫∫ over the (i, j) cell of gamma
    const double hx = grid.hx;
    const bool periodic = grid.boundary == Boundary::Periodic;
    auto dist = [&](int k) { return periodic ? std::min(k, X_ - k) : k; };
    if (m.is_dirac()) {
        diagonal_ = true;
        G_.assign(X_, hx);
    } else {
        toeplitz_ = true;
        G_.assign(X_, 0.0);
        if (m.is_riesz()) {
            for (int k = 0; k < X_; ++k) G_[k] = m.riesz_constant() * cell_power(dist(k), hx, m.alpha());
        } else {
            for (int k = 0; k < X_; ++k) G_[k] = hx * hx * gamma_eval(m, dist(k) * hx);
        }
    }
}

void VariationalProblem::apply_G(const double* rho, double* out) const {
    if (diagonal_) {
        for (int i = 0; i < X_; ++i) out[i] = G_[i] * rho[i];
        return;
    }
    for (int i = 0; i < X_; ++i) {
        double s = 0.0;
        for (int j = 0; j < X_; ++j) s += G_[std::abs(i - j)] * rho[j];
        out[i] = s;
    }
}

namespace {

// v_s = sum_r W_sr rho_r followed by G v_s
void weighted_potential(const std::vector<double>& W, int S, int X, const FieldGrid& g,
                        const std::function<void(const double*, double*)>& applyG, std::vector<double>& rho,
                        std::vector<double>& Gv) {
    rho.resize(g.g.size());
    for (std::size_t i = 0; i < g.g.size(); ++i) rho[i] = g.g[i] * g.g[i];
    std::vector<double> v(X);
    Gv.assign(g.g.size(), 0.0);
    for (int s = 0; s < S; ++s) {
        std::fill(v.begin(), v.end(), 0.0);
        for (int r = 0; r < S; ++r) {
            const double w = W[s * S + r];
            const double* rr = &rho[static_cast<std::size_t>(r) * X];
            for (int j = 0; j < X; ++j) v[j] += w * rr[j];
        }
        applyG(v.data(), &Gv[static_cast<std::size_t>(s) * X]);
    }
}

} // namespace

double VariationalProblem::interaction(const FieldGrid& g) const {
    require(g.S == S_ && g.X == X_, ErrorKind::DimensionMismatch, "variational: field does not match the grid");
    std::vector<double> rho, Gv;
    weighted_potential(W_, S_, X_, g, [this](const double* a, double* b) { apply_G(a, b); }, rho, Gv);
    double I = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) I += rho[i] * Gv[i];
    return I;
}

double VariationalProblem::gradient_energy(const FieldGrid& g) const {
    const int X = g.X;
    double D = 0.0;
    for (int s = 0; s < g.S; ++s) {
        double e = 0.0;
        if (g.boundary == Boundary::Dirichlet) {
            e += g.at(s, 0) * g.at(s, 0) + g.at(s, X - 1) * g.at(s, X - 1);
            for (int j = 0; j + 1 < X; ++j) e += (g.at(s, j + 1) - g.at(s, j)) * (g.at(s, j + 1) - g.at(s, j));
        } else {
            for (int j = 0; j < X; ++j) {
                const double d = g.at(s, (j + 1) % X) - g.at(s, j);
                e += d * d;
            }
        }
        D += g.hs * e / g.hx;
    }
    return D;
}

double VariationalProblem::value(const FieldGrid& g) const {
    require(g.max_normalization_error() <= 1e-10, ErrorKind::NotNormalized, "variational: slice normalization violated");
    const double I = interaction(g), D = gradient_energy(g);
    switch (kind_) {
    case Functional::M: return std::sqrt(std::max(I, 0.0)) - D;
    case Functional::MHalf: return std::sqrt(std::max(I, 0.0)) - 0.5 * D;
    default: return I - 0.5 * D;
    }
}

std::vector<double> VariationalProblem::gradient(const FieldGrid& g) const {
    std::vector<double> rho, Gv;
    weighted_potential(W_, S_, X_, g, [this](const double* a, double* b) { apply_G(a, b); }, rho, Gv);
    double I = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) I += rho[i] * Gv[i];
    double cI = 1.0, cD = 0.5;
    if (kind_ == Functional::M || kind_ == Functional::MHalf) {
        cI = I > 0.0 ? 0.5 / std::sqrt(I) : 0.0;
        cD = kind_ == Functional::M ? 1.0 : 0.5;
    }
    const int X = g.X;
    const double hs = g.hs, hx = g.hx;
    std::vector<double> out(g.g.size());
    for (int s = 0; s < g.S; ++s) {
        for (int j = 0; j < X; ++j) {
            double lo, hi;
            if (g.boundary == Boundary::Dirichlet) {
                lo = j > 0 ? g.at(s, j - 1) : 0.0;
                hi = j + 1 < X ? g.at(s, j + 1) : 0.0;
            } else {
                lo = g.at(s, (j + X - 1) % X);
                hi = g.at(s, (j + 1) % X);
            }
            const double dI = 4.0 * g.at(s, j) * Gv[static_cast<std::size_t>(s) * X + j];
            const double dD = hs * 2.0 * (2.0 * g.at(s, j) - lo - hi) / hx;
            out[static_cast<std::size_t>(s) * X + j] = (cI * dI - cD * dD) / (hs * hx);
        }
    }
    return out;
}

double eval_functional(Functional kind, const FieldGrid& g, const SpectralMeasure& m, double alpha0, double delta) {
    GridConfig c{g.S, g.L, g.hx, g.boundary};
    const VariationalProblem p(kind, m, alpha0, delta, c);
    return p.value(g);
}

namespace {

// (1 - kappa D2) q = p on one slice; Thomas algorithm, Sherman-Morrison for the periodic wrap
void sobolev_solve(const double* p, double* q, int X, double kappa, double hx, bool periodic) {
    const double off = -kappa / (hx * hx), diag = 1.0 + 2.0 * kappa / (hx * hx);
    auto thomas = [&](std::vector<double> b, const std::vector<double>& rhs, std::vector<double>& x) {
        std::vector<double> c(X), d(X);
        c[0] = off / b[0];
        d[0] = rhs[0] / b[0];
        for (int i = 1; i < X; ++i) {
            const double den = b[i] - off * c[i - 1];
            c[i] = off / den;
            d[i] = (rhs[i] - off * d[i - 1]) / den;
        }
        x.assign(X, 0.0);
        x[X - 1] = d[X - 1];
        for (int i = X - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    };
    std::vector<double> rhs(p, p + X), b(X, diag), y;
    if (!periodic) {
        thomas(b, rhs, y);
        std::copy(y.begin(), y.end(), q);
        return;
    }
    // A = T + u v^T with u = (-diag, 0, .., off), v = (1, 0, .., -off/diag)
    const double gam = -diag;
    b[0] -= gam;
    b[X - 1] -= off * off / gam;
    std::vector<double> u(X, 0.0), z;
    u[0] = gam;
    u[X - 1] = off;
    thomas(b, rhs, y);
    thomas(b, u, z);
    const double fact = (y[0] + off * y[X - 1] / gam) / (1.0 + z[0] + off * z[X - 1] / gam);
    for (int i = 0; i < X; ++i) q[i] = y[i] - fact * z[i];
}

void project_tangent(const FieldGrid& g, std::vector<double>& v) {
    for (int s = 0; s < g.S; ++s) {
        double dot = 0.0;
        for (int j = 0; j < g.X; ++j) dot += v[static_cast<std::size_t>(s) * g.X + j] * g.at(s, j);
        dot *= g.hx;
        for (int j = 0; j < g.X; ++j) v[static_cast<std::size_t>(s) * g.X + j] -= dot * g.at(s, j);
    }
}

} // namespace

FieldGrid gaussian_init(const VariationalProblem& p) {
    const GridConfig& c = p.grid();
    FieldGrid best;
    double best_v = -std::numeric_limits<double>::infinity();
    const double lo = 2.0 * c.hx, hi = 0.5 * c.L;
    const int n = 24;
    for (int k = 0; k < n; ++k) {
        const double sigma = lo * std::pow(hi / lo, k / (n - 1.0));
        FieldGrid g = field_from(c, [&](double, double x) { return std::exp(-x * x / (2.0 * sigma * sigma)); }, p.slices());
        const double v = p.value(g);
        if (v > best_v) {
            best_v = v;
            best = std::move(g);
        }
    }
    return best;
}

VariationalSolution solve(const VariationalProblem& p, const FieldGrid& init, const SolveOptions& opt) {
    VariationalSolution sol;
    sol.kind = p.kind();
    FieldGrid g = init;
    g.normalize();
    double v = p.value(g);
    sol.history.push_back(v);
    const std::size_t n = g.g.size();
    const bool periodic = g.boundary == Boundary::Periodic;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        std::vector<double> grad = p.gradient(g);
        project_tangent(g, grad);
        std::vector<double> dir(n);
        if (opt.sobolev > 0.0) {
            for (int s = 0; s < g.S; ++s)
                sobolev_solve(&grad[static_cast<std::size_t>(s) * g.X], &dir[static_cast<std::size_t>(s) * g.X], g.X,
                              opt.sobolev, g.hx, periodic);
            project_tangent(g, dir);
        } else {
            dir = grad;
        }
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += grad[i] * dir[i];
        slope *= g.hs * g.hx;
        if (!(slope > 0.0)) {
            sol.converged = true;
            break;
        }
        double tau = 0.5;
        bool accepted = false;
        FieldGrid trial = g;
        for (int bt = 0; bt < 60; ++bt, tau *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial.g[i] = g.g[i] + tau * dir[i];
            trial.normalize();
            const double tv = p.value(trial);
            if (tv >= v + opt.armijo * tau * slope) {
                accepted = true;
                g = trial;
                v = tv;
                break;
            }
        }
        if (!accepted) {
            sol.converged = true;
            break;
        }
        sol.history.push_back(v);
        const std::size_t h = sol.history.size();
        if (h > 20 && std::abs(v - sol.history[h - 21]) <= opt.tol * std::max(1.0, std::abs(v))) {
            sol.converged = true;
            ++it;
            break;
        }
    }
    sol.iterations = it;
    sol.value = v;
    sol.field = std::move(g);
    return sol;
}

VariationalSolution solve(Functional kind, const SpectralMeasure& m, double alpha0, double delta,
                          const GridConfig& grid, const SolveOptions& opt) {
    const VariationalProblem p(kind, m, alpha0, delta, grid);
    return solve(p, gaussian_init(p), opt);
}

std::vector<TrialField> trial_library() {
    std::vector<TrialField> out;
    for (double s : {0.25, 0.5, 1.0, 2.0})
        out.push_back({"gauss" + std::to_string(s).substr(0, 4),
                       [s](double, double x) { return std::exp(-x * x / (2.0 * s * s)); }});
    for (double s : {0.5, 1.0, 2.0})
        out.push_back({"sech" + std::to_string(s).substr(0, 3), [s](double, double x) { return 1.0 / std::cosh(x / s); }});
    for (double s : {0.5, 1.0})
        out.push_back({"lorentz" + std::to_string(s).substr(0, 3),
                       [s](double, double x) { return 1.0 / (1.0 + x * x / (s * s)); }});
    for (double w : {1.0, 2.0})
        out.push_back({"cosbump" + std::to_string(w).substr(0, 3),
                       [w](double, double x) { return std::abs(x) < w ? std::cos(M_PI * x / (2.0 * w)) : 0.0; }});
    out.push_back({"gauss_drift", [](double s, double x) {
                       const double sig = 0.5 + s;
                       return std::exp(-x * x / (2.0 * sig * sig));
                   }});
    return out;
}

double relation_E0_M(double M, double alpha) {
    require(alpha > 0.0 && alpha < 2.0, ErrorKind::InvalidArgument, "relation: 0 < alpha < 2");
    require(M >= 0.0, ErrorKind::InvalidArgument, "relation: M >= 0");
    return (2.0 - alpha) / 2.0 * std::pow(2.0, 2.0 * alpha / (2.0 - alpha)) *
           std::pow(4.0 * M / (4.0 - alpha), (4.0 - alpha) / (2.0 - alpha));
}

double relation_M_E0(double E0, double alpha) {
    require(alpha > 0.0 && alpha < 2.0, ErrorKind::InvalidArgument, "relation: 0 < alpha < 2");
    require(E0 >= 0.0, ErrorKind::InvalidArgument, "relation: E0 >= 0");
    const double base = E0 / ((2.0 - alpha) / 2.0 * std::pow(2.0, 2.0 * alpha / (2.0 - alpha)));
    return (4.0 - alpha) / 4.0 * std::pow(base, (2.0 - alpha) / (4.0 - alpha));
}

RescaleCheck rescale_covariance_check(const SpectralMeasure& m, double alpha0, const GridConfig& grid,
                                      const SolveOptions& opt) {
    RescaleCheck r;
    const auto a = solve(Functional::M, m, alpha0, 0.0, grid, opt);
    const auto b = solve(Functional::MHalf, m, alpha0, 0.0, grid, opt);
    r.converged = a.converged && b.converged;
    require(r.converged, ErrorKind::Stalled, "rescale check: solver did not converge");
    r.M = a.value;
    r.M_tilde = b.value;
    r.ratio = b.value / a.value;
    const double al = m.alpha();
    r.predicted_ratio = std::pow(2.0, al / (4.0 - al));
    return r;
}

std::string to_record(const VariationalSolution& s) {
    std::ostringstream os;
    os.precision(12);
    os << "kind=" << to_string(s.kind) << " value=" << s.value << " iterations=" << s.iterations
       << " converged=" << (s.converged ? 1 : 0) << " S=" << s.field.S << " X=" << s.field.X << " checksum=" << std::hex
       << s.field.checksum();
    return os.str();
}

} // namespace stratlab
