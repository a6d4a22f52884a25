#include <benchmark/benchmark.h>

#include "ginscale/dataset_io.hpp"
#include "ginscale/fitting.hpp"
#include "ginscale/kernels.hpp"

using namespace ginscale;

namespace {

CohortFile cohort(std::size_t n_researchers, double n_pub) {
    SynthSpec spec;
    spec.n_researchers = n_researchers;
    spec.b_true = {1.2, 3.0};
    spec.n_pub = Range::fixed(n_pub);
    spec.mean_citations = {10.0, 100.0};
    spec.seed = 42;
    return generate_synthetic(spec);
}

template <auto Kernel>
void pairwise(benchmark::State& state) {
    const CitationRecord r = cohort(1, static_cast<double>(state.range(0))).records.front();
    const ValueCounts vc = distinct_counts(r);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(vc));
    state.counters["distinct"] = static_cast<double>(vc.values.size());
}

template <auto Kernel>
void loss_grid(benchmark::State& state) {
    const FitPoints p = fit_points(cohort(1, static_cast<double>(state.range(0))).records.front());
    const FitConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(p, cfg));
}

template <auto Kernel>
void fit_all(benchmark::State& state) {
    const CohortFile c = cohort(static_cast<std::size_t>(state.range(0)), 200);
    const FitConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(c.records, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(pairwise<kernels::serial::pairwise_abs_diff_sum>)->Name("pairwise/serial")->Arg(1000)->Arg(100000);
BENCHMARK(pairwise<kernels::omp::pairwise_abs_diff_sum>)->Name("pairwise/omp")->Arg(1000)->Arg(100000);
BENCHMARK(loss_grid<kernels::serial::loss_grid>)->Name("loss_grid/serial")->Arg(200)->Arg(5000);
BENCHMARK(loss_grid<kernels::omp::loss_grid>)->Name("loss_grid/omp")->Arg(200)->Arg(5000);
BENCHMARK(fit_all<kernels::serial::fit_all>)->Name("fit_all/serial")->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(fit_all<kernels::omp::fit_all>)->Name("fit_all/omp")->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
