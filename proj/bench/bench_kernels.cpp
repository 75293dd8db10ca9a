// Serial reference against the OpenMP kernels, L=16 half-filling sector
// (dim 12870). Thread count is the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "opdeloc/ensemble.hpp"
#include "opdeloc/opspace.hpp"

using namespace opdeloc;

namespace {

constexpr int kModes = 16;
constexpr int kSize = 8;

const CouplingMatrix& quench() {
    static const CouplingMatrix j = [] {
        Rng rng(1);
        return rescale_to_unit_bandwidth(sample_couplings(make_complete(kModes), rng));
    }();
    return j;
}

SectorVector start() {
    auto v = zero_vector(kModes, kSize);
    v.amp.setLinSpaced(1.0, 2.0);
    return v;
}

void BM_reference(benchmark::State& state) {
    const auto v = start();
    for (auto _ : state) benchmark::DoNotOptimize(apply_liouvillian_reference(quench(), v));
}

void run_kernel(benchmark::State& state, SectorLiouvillian::Storage storage) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const SectorLiouvillian op(quench(), kSize, storage);
    const auto v = start();
    Eigen::VectorXd out;
    for (auto _ : state) {
        op.apply(v.amp, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_stencil(benchmark::State& state) { run_kernel(state, SectorLiouvillian::Storage::stencil); }
void BM_matrix_free(benchmark::State& state) { run_kernel(state, SectorLiouvillian::Storage::matrix_free); }

void BM_lanczos(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const SectorLiouvillian op(quench(), kSize);
    const auto v = basis_vector(kModes, MajoranaString::prefix(kSize));
    LanczosOptions opt;
    opt.max_dim = 40;
    for (auto _ : state) benchmark::DoNotOptimize(lanczos(op, v.amp, opt).b);
}

void BM_ensemble(benchmark::State& state) {
    EnsembleSpec spec;
    spec.realizations = 16;
    spec.num_modes = 12;
    spec.size = 6;
    spec.times = time_grid(2.0, 0.05);
    spec.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_ck_curve(spec).mean);
}

const int kMaxThreads = omp_get_max_threads();

}  // namespace

BENCHMARK(BM_reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_stencil)->Arg(1)->Arg(kMaxThreads)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_matrix_free)->Arg(1)->Arg(kMaxThreads)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_lanczos)->Arg(1)->Arg(kMaxThreads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ensemble)->Arg(1)->Arg(kMaxThreads)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
