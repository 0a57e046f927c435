#pragma once

#include "stratlab/kernels.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stratlab {

struct RateInputs {
    double alpha = 1.0;
    double alpha0 = 0.5;
    int d = 1;
    double M = 0.0;  // used by the M-route predictors
    double E0 = 0.0; // used by the E0-route predictor
};

struct RatePrediction {
    double exponent = 0.0;
    double constant = 0.0;
    bool conjecture = false;
    std::string tag;
};

// throws HypothesisViolated outside alpha0 in (0,1), alpha0 + alpha < 2, 0 < alpha < d or alpha = d = 1
void check_rate_hypothesis(const RateInputs& r);

// log E u(t, x) ~ constant * t^exponent
RatePrediction predict_logEu_rate(const RateInputs& r);

// p-th moment pattern; reported with conjecture = true and never asserted
RatePrediction predict_logEup_rate(int p, const RateInputs& r);

// per-order growth base of (n!)^{3-alpha} E S_{2n}(g_{2n}(., 1, 0)), through E0 or through M
double moment_base_E0(const RateInputs& r);
double moment_base_M(const RateInputs& r);
double predict_moment_prefactor(int n, const RateInputs& r);   // base_E0^n
double predict_moment_prefactor_M(int n, const RateInputs& r); // base_M^n

// b^{-1/g} log sum_n theta^n b^n / (n!)^g for every b in b_list
std::vector<std::pair<double, double>> mittag_leffler_rate(double theta, double g, const std::vector<double>& b_list);
double mittag_leffler_log(double theta, double g, double b);

// n^{-1} log[(n!)^{-(1-a0)} ∫_{n/eta^2}^∞ t^{(1-a0) n} e^{-c t} dt]; -inf when the tail underflows log space
double gamma_tail_negligibility(double eta, int n, double alpha0, double c);

// log of the upper incomplete Gamma function, valid far into the tail
double log_upper_gamma(double a, double x);

struct SmallNReport {
    double fitted_exponent = 0.0;
    double expected_exponent = 0.0;
    double A = 0.0;                 // E S_2(., t, 0) / t^{expected_exponent}, log-averaged over the grid
    double prefactor_n1 = 0.0;      // base of the large-n prediction when E0 > 0, else 0
    bool informational = true;      // the two numbers are not asserted to agree
};

SmallNReport small_n_consistency(const SpectralMeasure& m, double alpha0, const std::vector<double>& t_grid,
                                 double E0 = 0.0);

} // namespace stratlab
