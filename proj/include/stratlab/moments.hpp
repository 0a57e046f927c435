#pragma once

#include "stratlab/kernels.hpp"

#include <cstdint>

namespace stratlab {

enum class MomentMethod { Quadrature, MonteCarlo };

struct MomentSpec {
    int n = 1;
    double t = 1.0;
    int d = 1;
    SpectralMeasure measure;
    double alpha0 = 0.5;
    MomentMethod method = MomentMethod::Quadrature;
    std::int64_t budget = 0; // GL nodes per axis (quadrature, n = 2) or samples (Monte Carlo)
    std::uint64_t seed = 1;
    double eps = 1e-3;   // space mollifier for DiracSpace
    double delta = 1e-3; // time truncation for Monte Carlo
    double eta = 1e-2;   // Green mollifier for d = 3
};

struct MomentValue {
    double value = 0.0;
    double error_estimate = 0.0;
    double stderr = 0.0; // Monte Carlo only
    double bias_estimate = 0.0;
    std::int64_t evaluations = 0;
};

double sine_integral(double a, double alpha0);

// ½ ∫_0^A (A-u)^2 sin(u) u^{-alpha0} du
double sine_integral_weighted(double A, double alpha0);

double s2_expectation_reduced(double t, const SpectralMeasure& m, double alpha0);

MomentValue s2n_expectation_direct(const MomentSpec& spec);

// E S_k for any chaos order k; odd orders vanish
MomentValue stratonovich_expectation(int order, const MomentSpec& spec);

struct ChaosNorm {
    double value = 0.0;
    double fitted_C = 0.0; // value * n! / t^{2n}
};

ChaosNorm l2_norm_chaos(const MomentSpec& spec);

} // namespace stratlab
