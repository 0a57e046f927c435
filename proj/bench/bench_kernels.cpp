#include "stratlab/localtime.hpp"
#include "stratlab/suites.hpp"

#include <benchmark/benchmark.h>

using namespace stratlab;

namespace {

void BM_cumulative_serial(benchmark::State& st) {
    const auto p = simulate_path(1, 4.0, static_cast<int>(st.range(0)), 1, 0);
    const auto m = reference_atomic();
    std::vector<double> h;
    for (auto _ : st) {
        complex_cumulative_serial(p, 2.0, 0.5, m, 1, h);
        benchmark::DoNotOptimize(h.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

void BM_cumulative_fast(benchmark::State& st) {
    const auto p = simulate_path(1, 4.0, static_cast<int>(st.range(0)), 1, 0);
    const auto m = reference_atomic();
    std::vector<double> h;
    for (auto _ : st) {
        complex_cumulative_fast(p, 2.0, 0.5, m, 1, h);
        benchmark::DoNotOptimize(h.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

template <Backend B>
void BM_complex_mean(benchmark::State& st) {
    const auto e = simulate_paths(1, 1.0, 32, static_cast<int>(st.range(0)), 3);
    const auto m = reference_atomic();
    for (auto _ : st) benchmark::DoNotOptimize(complex_mean(e, 1.0, 0.5, m, 0.0, B).value);
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

} // namespace

BENCHMARK(BM_cumulative_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_cumulative_fast)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_complex_mean<Backend::Serial>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_complex_mean<Backend::Parallel>)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
