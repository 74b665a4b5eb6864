#include <benchmark/benchmark.h>

#include <numbers>

#include "nosig/classify.hpp"
#include "nosig/random.hpp"
#include "nosig/signalling.hpp"

namespace {

using namespace nosig;

void BM_HermEig(benchmark::State &state) {
    Rng rng(7);
    const CMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(herm_eig(h));
    }
}
BENCHMARK(BM_HermEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_PartialTrace(benchmark::State &state) {
    Rng rng(11);
    const CMatrix rho = random_mixed_state(16, rng).mat();
    const std::size_t dims[] = {2, 2, 2, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, dims, 1));
    }
}
BENCHMARK(BM_PartialTrace);

void BM_NoSignallingDistance(benchmark::State &state) {
    const SignallingExperiment exp{partially_entangled(std::numbers::pi / 6.0), kAxisZ, kAxisX,
                                   random_channel(2, 2, 2, 3), std::nullopt, std::nullopt};
    for (auto _ : state) {
        benchmark::DoNotOptimize(no_signalling_distance(exp));
    }
}
BENCHMARK(BM_NoSignallingDistance);

void BM_ScanBasesPureBranch(benchmark::State &state) {
    const LocalMap map = PureBranchMap(2, 0.9, BranchVariant::Mixture);
    const BipartiteState shared = singlet();
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_bases(shared, map, static_cast<int>(state.range(0)), 1));
    }
}
BENCHMARK(BM_ScanBasesPureBranch)->Arg(10)->Arg(100);

void BM_ClassifyBlochAffine(benchmark::State &state) {
    const LocalMap map = BlochAffineCloneMap(0.7, 1.0 / 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_map(map));
    }
}
BENCHMARK(BM_ClassifyBlochAffine)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
