#pragma once

#include "stratlab/kernels.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stratlab {

// One Brownian path sampled on the half-step grid: node j sits at time j*h/2, so even nodes are
// grid points and odd nodes are cell midpoints.
struct Path {
    int K = 0;
    double t = 0.0;
    int d = 1;
    std::vector<double> B;     // (2K+1) x d, row-major
    std::vector<double> beta;  // 2K+1
    std::vector<double> kappa; // 2K+1 when the Cauchy process is requested, else empty

    double h() const { return t / K; }
    const double* B_at(int node) const { return B.data() + static_cast<std::size_t>(node) * d; }
    double B_mid(int cell, int coord = 0) const { return B[static_cast<std::size_t>(2 * cell + 1) * d + coord]; }
    double beta_mid(int cell) const { return beta[2 * cell + 1]; }
};

Path simulate_path(int d, double t, int K, std::uint64_t seed, std::uint64_t index, bool with_cauchy = false);

// Immutable, lazily materialized ensemble; path i is regenerated from (seed, i).
struct PathEnsemble {
    int m = 0;
    int K = 0;
    double t = 0.0;
    int d = 1;
    bool with_cauchy = false;
    std::uint64_t seed = 0;

    Path path(std::size_t i) const { return simulate_path(d, t, K, seed, i, with_cauchy); }
};

PathEnsemble simulate_paths(int d, double t, int K, int m, std::uint64_t seed, bool with_cauchy = false);

// gamma_eps as a cheap pointwise callable; eps = 0 selects the unmollified kernel (not for DiracSpace)
class SpaceKernel {
public:
    SpaceKernel(const SpectralMeasure& m, double eps);
    double operator()(const double* dx) const;
    double at_origin() const { return origin_; }
    int dim() const { return d_; }

private:
    std::function<double(const double*)> f_;
    double origin_ = 0.0;
    int d_ = 1;
};

struct HamiltonianEstimate {
    std::complex<double> value;
    double stderr = 0.0;
    int m = 0;
    int K = 0;
    std::string kernel;
};

// midpoint product rule of ∫∫ gamma_eps(B(s) - B(r)) ds dr
double hamiltonian_plain(const Path& p, const SpectralMeasure& m, double eps);

// mutual local time ∫∫ gamma_eps(B1(s) - B2(r)) ds dr of two paths on the same grid
double mutual_local_time(const Path& p1, const Path& p2, const SpectralMeasure& m, double eps);

// ∫∫ (theta|s-r| + i(beta(s)-beta(r)))^{-alpha0} gamma_eps(B(s)-B(r)); reference double loop over both triangles
std::complex<double> hamiltonian_complex(const Path& p, double theta, double alpha0, const SpectralMeasure& m,
                                         double eps = 0.0);

// ∫∫ |theta(s-r) + i eta(beta(s)-beta(r))|^{-alpha0} gamma_eps(B(s)-B(r))
double hamiltonian_time_frac(const Path& p, double theta, double eta, double alpha0, const SpectralMeasure& m,
                             double eps);
// the two dominating functionals: |s-r|^{-alpha0} and |beta(s)-beta(r)|^{-alpha0} kernels
double hamiltonian_time_only(const Path& p, double alpha0, const SpectralMeasure& m, double eps);
double hamiltonian_beta_only(const Path& p, double eta, double alpha0, const SpectralMeasure& m, double eps);

// exact diagonal-band integrals 2 ∫_0^h (h-u) k(u) du for the kernels above
double band_complex(double h, double theta, double alpha0);
double band_time_frac(double h, double theta, double eta, double alpha0);
double band_time_only(double h, double alpha0);
double band_beta_only(double h, double eta, double alpha0);

enum class Backend { Serial, Parallel };

// ensemble mean of hamiltonian_complex with batch-means stderr (32 batches)
HamiltonianEstimate complex_mean(const PathEnsemble& e, double theta, double alpha0, const SpectralMeasure& m,
                                 double eps = 0.0, Backend backend = Backend::Parallel);

// Fast kernels for FiniteAtomic measures. H[k] = value of the complex Hamiltonian on [0, t_k], t_k = k h,
// k = 0..K, for grid-step `stride` (1 = fine, 2 = coarse grid using the odd fine nodes as midpoints).
void complex_cumulative_serial(const Path& p, double theta, double alpha0, const SpectralMeasure& m, int stride,
                               std::vector<double>& H);
void complex_cumulative_fast(const Path& p, double theta, double alpha0, const SpectralMeasure& m, int stride,
                             std::vector<double>& H);

struct RepresentationResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double stderr = 0.0;
    double rhs_coarse = 0.0;    // same paths on the grid of step 2h
    double quad_tolerance = 0.0; // grid error from the two grids + lhs quadrature error + horizon truncation
    double horizon = 0.0;
    int K = 0;
    int m = 0;
};

// n = 1 Laplace-transform representation: lhs by quadrature, rhs by Monte Carlo
RepresentationResult representation_check_n1(double theta, const SpectralMeasure& m, double alpha0,
                                             std::int64_t mc_budget, std::uint64_t seed, int K = 512,
                                             Backend backend = Backend::Parallel);

// ∫_0^∞ e^{-theta t} E S_2(g_2(., t, 0)) dt
double representation_lhs_n1(double theta, const SpectralMeasure& m, double alpha0, double* error = nullptr);

struct ChainSample {
    double s = 0.0;
    double r = 0.0;
    double dbeta = 0.0;
    double weight = 1.0; // gamma value, >= 0
};

std::vector<ChainSample> chain_samples(std::size_t n, std::uint64_t seed);

struct ChainReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    double max_violation = 0.0;
    bool holds() const { return failures == 0; }
};

// 0 <= Re z^{-a0} w <= |z|^{-a0} w <= min((theta|s-r|)^{-a0}, |dbeta|^{-a0}) w with z = theta|s-r| + i dbeta,
// and for c >= 1 the modulus kernel at c*theta lies between c^{-a0} and 1 times the one at theta
ChainReport kernel_chain_check(const std::vector<ChainSample>& samples, double theta, double alpha0,
                               double scale = 2.0, double slack = 1e-12);

struct TrendPoint {
    double t = 0.0;
    double value = 0.0;
    double stderr = 0.0;
};

struct TrendSpec {
    double b = 0.1;
    double theta = 1.0;
    double eta = 1.0;
    double alpha0 = 0.5;
    SpectralMeasure measure;
    double eps = 0.05;
    std::vector<double> horizons{0.5, 1.0, 2.0};
    int m = 2000;
    int K = 32;
    std::uint64_t seed = 1;
    double exp_cap = 700.0;
};

// t^{-1} log E exp{b t^{a0-1} H_tf(t)} per horizon, jackknife stderr over 32 batches
std::vector<TrendPoint> exp_moment_trend(const TrendSpec& spec);

} // namespace stratlab
