#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace stratlab {

struct RunConfig {
    std::string suite = "all";
    std::optional<std::uint64_t> seed;
    std::int64_t mc = 0; // 0 selects each suite's default budget
    double tol = 0.0;    // 0 selects each check's pinned tolerance
    std::string out = "runs";
    int d = 1;
    double alpha = 0.5;  // Riesz exponent for the homogeneous configurations
    double alpha0 = 0.5;
    double theta = 2.0;
};

// flat `key = value` file; unknown keys and malformed values raise ConfigError
RunConfig load_config(const std::string& path, RunConfig base = {});

// validates ranges and suite names; MC suites need a seed
void validate(const RunConfig& c);

bool suite_uses_mc(const std::string& suite);

// canonical text of every field that affects results (the output directory is excluded)
std::string canonical(const RunConfig& c);
std::string config_hash(const RunConfig& c);

} // namespace stratlab
