#pragma once

#include "stratlab/kernels.hpp"
#include "stratlab/wick.hpp"

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stratlab {

using PairKey = std::pair<int, int>;

// key used when one lambda-range serves every pair
inline constexpr PairKey kAnyPair{0, 0};

struct LambdaRange {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct NormTriple {
    double norm0 = 0.0;
    std::map<PairKey, double> norm1;
    std::map<PairKey, double> norm2;

    double n1(const PairKey& p) const;
    double n2(const PairKey& p) const;
};

// Norms of G_l(t,x) = e^{-theta t} G(t,x). An empty range map yields the full range under kAnyPair.
NormTriple compute_norms(double theta, const SpectralMeasure& m, double alpha0,
                         const std::map<PairKey, LambdaRange>& ranges = {});

// Gamma(a0)^{-1} ∫_A ∫ ((theta+lambda)^2 + |xi|^2)^{-1} lambda^{a0-1} dlambda mu(dxi)
double lemma_a1(double theta, const SpectralMeasure& m, double alpha0, LambdaRange range = {});
// same quantity with the inner transform |∫ e^{-(theta+lambda)t} sin(rho t)/rho dt| done by quadrature
double lemma_a1_oscillatory(double theta, const SpectralMeasure& m, double alpha0);

// two-term spectral form, including the Gamma(a0)^{-1} of the Laplace representation
double lemma_a2_closed(double theta, const SpectralMeasure& m, double alpha0, LambdaRange range = {});

struct LemmaA2 {
    double closed = 0.0;
    double direct = 0.0;
    double direct_error = 0.0;
};

LemmaA2 lemma_a2(double theta, const SpectralMeasure& m, double alpha0);

// least-squares slope of log lemma_a2_closed against log theta
double lemma_a3_rate(const std::vector<double>& thetas, const SpectralMeasure& m, double alpha0);

struct Occurrence {
    int index = 0;
    PairKey pair;
};

struct BoundCertificate {
    std::vector<int> q0;
    std::vector<Occurrence> q1;
    std::vector<Occurrence> q2;
    double bound = 0.0;
    // bound without the factor 2 per Q1 entry; valid when no Case 3 split occurs on the trace
    double refined_bound = 0.0;
    bool refined_valid = false;
    int case3_splits = 0;
    std::vector<std::string> trace;
    std::vector<double> alternatives; // bounds of every candidate produced by Case 3 splits
};

BoundCertificate theorem3_certificate(int n1, int n2, const PairPartition& pairing,
                                      const std::vector<NormTriple>& norms);

bool certificate_valid(const BoundCertificate& c, int n);

std::string to_record(const BoundCertificate& c);

enum class BaseCase { Split11, Left20, Right02 };

struct Domination {
    double lhs = 0.0;
    double bound = 0.0;
    double refined_bound = 0.0;
};

Domination bound_domination_check(BaseCase which, double theta, const SpectralMeasure& m, double alpha0);

} // namespace stratlab
