#pragma once

#include "stratlab/config.hpp"
#include "stratlab/kernels.hpp"
#include "stratlab/report.hpp"

#include <string>
#include <vector>

namespace stratlab {

// every suite name except "all", in run order
const std::vector<std::string>& suite_names();

// runs one suite (or all of them) and returns its rows sorted by check id
Report run_suite(const std::string& name, const RunConfig& cfg);

// the three-atom measure {0: 1, +1: 1/2, -1: 1/2}, gamma(x) = 1 + cos x
SpectralMeasure reference_atomic();

} // namespace stratlab
