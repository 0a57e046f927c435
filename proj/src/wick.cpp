#include "stratlab/wick.hpp"

#include "stratlab/error.hpp"
#include "stratlab/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace stratlab {

int PairPartition::partner(int index) const {
    for (const auto& [j, k] : pairs) {
        if (j == index) return k;
        if (k == index) return j;
    }
    fail(ErrorKind::InvalidPairing, "partner: index not covered");
}

bool PairPartition::valid() const {
    const int n2 = 2 * order();
    std::vector<int> seen(n2 + 1, 0);
    for (const auto& [j, k] : pairs) {
        if (j >= k || j < 1 || k > n2) return false;
        if (seen[j]++ || seen[k]++) return false;
    }
    return true;
}

std::uint64_t pairing_count(int n) {
    std::uint64_t c = 1;
    for (int k = 1; k <= n; ++k) c *= static_cast<std::uint64_t>(2 * k - 1);
    return c;
}

std::vector<PairPartition> enumerate_pairings(int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "enumerate_pairings: n >= 1");
    require(n <= kMaxPairingOrder, ErrorKind::OrderTooLarge, "enumerate_pairings: n above guard");
    std::vector<PairPartition> out;
    out.reserve(pairing_count(n));
    std::vector<char> used(2 * n + 1, 0);
    PairPartition cur;
    std::function<void()> rec = [&]() {
        int first = 1;
        while (first <= 2 * n && used[first]) ++first;
        if (first > 2 * n) {
            out.push_back(cur);
            return;
        }
        used[first] = 1;
        for (int k = first + 1; k <= 2 * n; ++k) {
            if (used[k]) continue;
            used[k] = 1;
            cur.pairs.emplace_back(first, k);
            rec();
            cur.pairs.pop_back();
            used[k] = 0;
        }
        used[first] = 0;
    };
    rec();
    return out;
}

double wick_moment(const Eigen::MatrixXd& cov) {
    require(cov.rows() == cov.cols(), ErrorKind::DimensionMismatch, "wick_moment: matrix must be square");
    const int size = static_cast<int>(cov.rows());
    if (size % 2 == 1) return 0.0;
    if (size == 0) return 1.0;
    require(size / 2 <= kMaxPairingOrder, ErrorKind::OrderTooLarge, "wick_moment: order above guard");
    // hafnian by recursion on the smallest free index
    std::vector<char> used(size, 0);
    std::function<double()> rec = [&]() -> double {
        int first = 0;
        while (first < size && used[first]) ++first;
        if (first == size) return 1.0;
        used[first] = 1;
        double s = 0.0;
        for (int k = first + 1; k < size; ++k) {
            if (used[k] || cov(first, k) == 0.0) continue;
            used[k] = 1;
            s += cov(first, k) * rec();
            used[k] = 0;
        }
        used[first] = 0;
        return s;
    };
    return rec();
}

WickCrosscheck wick_mc_crosscheck(const Eigen::MatrixXd& cov, std::int64_t m, std::uint64_t seed) {
    require(cov.rows() == cov.cols(), ErrorKind::DimensionMismatch, "wick_mc: matrix must be square");
    require(m >= 2, ErrorKind::InvalidArgument, "wick_mc: m >= 2");
    const int n = static_cast<int>(cov.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (cov + cov.transpose()));
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    require(es.eigenvalues().minCoeff() >= -1e-10 * scale, ErrorKind::NotPSD, "wick_mc: covariance not PSD");
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd L = es.eigenvectors() * root.asDiagonal();

    WickCrosscheck out;
    out.exact = wick_moment(cov);
    Rng rng(seed, 0);
    Eigen::VectorXd z(n);
    double sum = 0.0, sum2 = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) z[k] = rng.normal();
        const Eigen::VectorXd g = L * z;
        double p = 1.0;
        for (int k = 0; k < n; ++k) p *= g[k];
        sum += p;
        sum2 += p * p;
    }
    out.mc = sum / m;
    const double var = std::max(0.0, (sum2 - m * out.mc * out.mc) / (m - 1));
    out.stderr = std::sqrt(var / m);
    return out;
}

} // namespace stratlab
