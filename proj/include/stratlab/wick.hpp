#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace stratlab {

// Pairs use 1-based indices with j < k.
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;

    int order() const { return static_cast<int>(pairs.size()); }
    int partner(int index) const;
    bool valid() const;
};

constexpr int kMaxPairingOrder = 8;

std::uint64_t pairing_count(int n);

// Smallest unpaired index is paired first; order is canonical.
std::vector<PairPartition> enumerate_pairings(int n);

double wick_moment(const Eigen::MatrixXd& cov);

struct WickCrosscheck {
    double exact = 0.0;
    double mc = 0.0;
    double stderr = 0.0;
};

WickCrosscheck wick_mc_crosscheck(const Eigen::MatrixXd& cov, std::int64_t m, std::uint64_t seed);

} // namespace stratlab
