#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <driftguard/baselines.hpp>

using namespace driftguard;

namespace {

std::vector<FeatureVector> gaussian_rows(std::size_t n, std::size_t d,
                                         unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> value;
    std::vector<FeatureVector> rows(n, FeatureVector(d));
    for (auto& row : rows) {
        for (double& v : row) v = value(rng);
    }
    return rows;
}

}  // namespace

static void BM_LofFit(benchmark::State& state) {
    const auto rows = gaussian_rows(static_cast<std::size_t>(state.range(0)), 4, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            FittedBaseline::fit(BaselineKind::kLof, rows, 20));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LofFit)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

static void BM_LofScore(benchmark::State& state) {
    const auto rows = gaussian_rows(static_cast<std::size_t>(state.range(0)), 4, 3);
    const FittedBaseline lof = FittedBaseline::fit(BaselineKind::kLof, rows, 20);
    const auto queries = gaussian_rows(64, 4, 5);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lof.score(queries[i++ % queries.size()]));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LofScore)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_EcodScore(benchmark::State& state) {
    const auto rows = gaussian_rows(static_cast<std::size_t>(state.range(0)), 4, 3);
    const FittedBaseline ecod = FittedBaseline::fit(BaselineKind::kEcod, rows);
    const auto queries = gaussian_rows(64, 4, 5);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ecod.score(queries[i++ % queries.size()]));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EcodScore)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

BENCHMARK_MAIN();
