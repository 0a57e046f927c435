#pragma once

#include "stratlab/kernels.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stratlab {

enum class Functional {
    M,      // sqrt(interaction) - gradient energy, |s-r|^{-a0} in time
    MHalf,  // sqrt(interaction) - half the gradient energy
    E0,     // interaction - half the gradient energy, |s-r|^{-a0} in time
    Edelta, // interaction - half the gradient energy, truncated kernel gamma0_delta in time
    H       // time-independent: one slice, no time kernel
};

std::string to_string(Functional k);

enum class Boundary { Dirichlet, Periodic };

struct GridConfig {
    int S = 16;      // time slices on [0,1]
    double L = 8.0;  // space box [-L, L]
    double hx = 0.05;
    Boundary boundary = Boundary::Dirichlet;
};

// g[s][j] at x_j = -L + (j+1) hx (Dirichlet: interior points) or x_j = -L + j hx (periodic)
struct FieldGrid {
    int S = 0;
    int X = 0;
    double hs = 0.0;
    double hx = 0.0;
    double L = 0.0;
    Boundary boundary = Boundary::Dirichlet;
    std::vector<double> g; // S x X row-major

    static FieldGrid from(const GridConfig& c, int slices_override = 0);
    double x(int j) const;
    double& at(int s, int j) { return g[static_cast<std::size_t>(s) * X + j]; }
    double at(int s, int j) const { return g[static_cast<std::size_t>(s) * X + j]; }
    double slice_norm2(int s) const;
    void normalize();
    double max_normalization_error() const;
    // mass of |g|^2 in the outer fraction of the box, averaged over slices
    double outer_mass(double fraction = 0.1) const;
    std::uint64_t checksum() const;
};

// fills a grid from f(s, x) and normalizes every slice
FieldGrid field_from(const GridConfig& c, const std::function<double(double, double)>& f, int slices_override = 0);

// The discretized problem: cell-integrated time kernel W (S x S) and space kernel G (X x X or diagonal).
class VariationalProblem {
public:
    VariationalProblem(Functional kind, const SpectralMeasure& m, double alpha0, double delta, const GridConfig& grid);

    double interaction(const FieldGrid& g) const;
    double gradient_energy(const FieldGrid& g) const;
    double value(const FieldGrid& g) const;
    // L2(hs hx) gradient of value
    std::vector<double> gradient(const FieldGrid& g) const;

    Functional kind() const { return kind_; }
    const GridConfig& grid() const { return grid_; }
    int slices() const { return S_; }

private:
    Functional kind_;
    GridConfig grid_;
    int S_ = 1;
    int X_ = 0;
    std::vector<double> W_;  // S x S
    std::vector<double> G_;  // X x X, or X entries when diagonal
    bool diagonal_ = false;
    bool toeplitz_ = false; // G_ depends on |i - j| only; stored as first row

    void apply_G(const double* rho, double* out) const;
};

double eval_functional(Functional kind, const FieldGrid& g, const SpectralMeasure& m, double alpha0,
                       double delta = 0.0);

struct SolveOptions {
    int max_iter = 4000;
    double tol = 1e-9;
    double sobolev = 1.0; // kappa in (1 - kappa d^2/dx^2) p = gradient; 0 gives the plain L2 gradient
    double armijo = 1e-4;
};

struct VariationalSolution {
    double value = 0.0;
    FieldGrid field;
    int iterations = 0;
    bool converged = false;
    Functional kind = Functional::M;
    std::vector<double> history; // accepted values
};

// best of a log-spaced sweep of slice-constant Gaussians
FieldGrid gaussian_init(const VariationalProblem& p);

VariationalSolution solve(const VariationalProblem& p, const FieldGrid& init, const SolveOptions& opt = {});
VariationalSolution solve(Functional kind, const SpectralMeasure& m, double alpha0, double delta,
                          const GridConfig& grid, const SolveOptions& opt = {});

// the fixed library of analytic trial fields
struct TrialField {
    std::string name;
    std::function<double(double, double)> f; // (s, x)
};
std::vector<TrialField> trial_library();

double relation_E0_M(double M, double alpha);
double relation_M_E0(double E0, double alpha);

struct RescaleCheck {
    double M = 0.0;
    double M_tilde = 0.0;
    double ratio = 0.0;
    double predicted_ratio = 0.0;
    bool converged = false;
};

// MHalf / M against 2^{alpha/(4-alpha)}; throws Stalled if either solve does not converge
RescaleCheck rescale_covariance_check(const SpectralMeasure& m, double alpha0, const GridConfig& grid,
                                      const SolveOptions& opt = {});

std::string to_record(const VariationalSolution& s);

} // namespace stratlab
