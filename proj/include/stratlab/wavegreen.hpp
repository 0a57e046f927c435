#pragma once

#include "stratlab/kernels.hpp"

namespace stratlab {

struct GreenSpec {
    int d = 1;
    double eta = 0.0; // heat mollification, required for d = 3
};

double green_eval(const GreenSpec& g, double t, const Point& x);
double green_eval(const GreenSpec& g, double t, double x);
// radial profile G(t, r), r = |x|
double green_radial(const GreenSpec& g, double t, double r);

double green_fourier(double t, double rho);

// ∫ G(t, x) dx by radial quadrature
double green_mass(const GreenSpec& g, double t);

double heat_kernel(int d, double t, const Point& x);
double heat_kernel(int d, double t, double x);

struct SubordinationResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_err = 0.0;
    double rhs_err = 0.0;
};

SubordinationResult subordination_check(double lambda, const Point& x, int d);

bool green_scaling_check(const GreenSpec& g, double t, const Point& x);

// ∫ G(t, x) e^{i xi x} dx for d = 1 by quadrature
double green_fourier_quadrature(double t, double xi);

} // namespace stratlab
