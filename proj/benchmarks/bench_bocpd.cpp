#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <driftguard/bocpd.hpp>
#include <driftguard/risk.hpp>

using namespace driftguard;

namespace {

BocpdConfig benchmark_config(std::size_t dimension, double hazard) {
    BocpdConfig config;
    config.hazard = HazardFunction{hazard};
    config.prune_log_threshold = -30.0;
    config.benign_prior.assign(dimension, NigParams{0.0, 300.0, 150.0, 150.0});
    config.malicious_prior.assign(dimension, NigParams{0.0, 4.0, 2.0, 20.0});
    config.mixing_weight = 0.99;
    return config;
}

std::vector<std::vector<double>> gaussian_stream(std::size_t length,
                                                 std::size_t dimension,
                                                 unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> value;
    std::vector<std::vector<double>> data(length, std::vector<double>(dimension));
    for (auto& row : data) {
        for (double& v : row) v = value(rng);
    }
    return data;
}

}  // namespace

// Steady-state step cost once the hypothesis set has filled out.
static void BM_BocpdStep(benchmark::State& state) {
    const std::size_t dimension = static_cast<std::size_t>(state.range(0));
    const double hazard = 1.0 / static_cast<double>(state.range(1));
    const BocpdConfig config = benchmark_config(dimension, hazard);
    const auto data = gaussian_stream(4096, dimension, 7);

    RunLengthPosterior posterior = init(config);
    std::size_t warmup = 512;
    std::size_t i = 0;
    for (; i < warmup; ++i) {
        posterior = step(posterior, data[i % data.size()], config).posterior;
    }
    for (auto _ : state) {
        posterior = step(posterior, data[i++ % data.size()], config).posterior;
        benchmark::DoNotOptimize(posterior.log_weights.data());
    }
    state.counters["hypotheses"] =
        static_cast<double>(posterior.size());
}
BENCHMARK(BM_BocpdStep)
    ->Args({1, 100})
    ->Args({4, 100})
    ->Args({4, 1000})
    ->Args({16, 100});

static void BM_IncidentProbability(benchmark::State& state) {
    const std::size_t dimension = 4;
    const BocpdConfig config = benchmark_config(dimension, 0.01);
    const auto data = gaussian_stream(1024, dimension, 11);
    RunLengthPosterior posterior = init(config);
    for (std::size_t i = 0; i < 600; ++i) {
        posterior = step(posterior, data[i % data.size()], config).posterior;
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            incident_probability(posterior, data[i++ % data.size()]));
    }
}
BENCHMARK(BM_IncidentProbability);

BENCHMARK_MAIN();
