#pragma once

#include <cstdint>
#include <random>

namespace stratlab {

// One independent stream per (seed, stream) key; streams are reproducible in isolation.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
        eng_.seed(seq);
    }

    double uniform() { return uni_(eng_); }
    double normal() { return norm_(eng_); }
    double cauchy() { return cauchy_(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::cauchy_distribution<double> cauchy_{0.0, 1.0};
};

} // namespace stratlab
