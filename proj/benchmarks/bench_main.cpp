#include <benchmark/benchmark.h>

#include "marketgame/analysis.hpp"
#include "marketgame/engine.hpp"
#include "marketgame/stopping.hpp"

using namespace marketgame;

namespace {

GameConfig game(std::size_t investors, std::size_t assets) {
    std::vector<double> wealth(investors, 1.0);
    std::vector<double> alpha(assets, 2.0);
    std::vector<StrategySpec> strategies;
    strategies.push_back(StrategySpec::lambda_star());
    for (std::size_t m = 1; m < investors; ++m) {
        std::vector<double> w(assets, 1.0);
        w[m % assets] = 3.0;
        strategies.push_back(StrategySpec::constant(SimplexVector(w)));
    }
    return GameConfig(wealth, strategies, GrowthSpec::discrete({1.1, 1.3}, {0.5, 0.5}),
                      RelativePayoffSpec::dirichlet(alpha));
}

void BM_simulate_path(benchmark::State& state) {
    const GameConfig config =
        game(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(config, 256, RngStream(1, path++)));
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_simulate_path)->Args({2, 2})->Args({4, 2})->Args({8, 8});

void BM_estimate_expected_tau(benchmark::State& state) {
    const GameConfig config = game(2, 2);
    CrossingOptions options;
    options.paths = 200;
    options.seed = 5;
    options.horizon = 400;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_expected_tau(config, 0, 100.0, options));
    }
}
BENCHMARK(BM_estimate_expected_tau);

void BM_compute_f_discrete(benchmark::State& state) {
    const RelativePayoffSpec spec = RelativePayoffSpec::discrete(
        {SimplexVector({0.7, 0.2, 0.1}), SimplexVector({0.1, 0.6, 0.3}),
         SimplexVector({0.2, 0.2, 0.6})},
        {0.4, 0.35, 0.25});
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_f(spec, 0.2));
    }
}
BENCHMARK(BM_compute_f_discrete);

void BM_compute_f_dirichlet_saa(benchmark::State& state) {
    const RelativePayoffSpec spec = RelativePayoffSpec::dirichlet({2.0, 3.0, 4.0});
    ComputeFOptions options;
    options.saa_samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_f(spec, 0.15, options));
    }
}
BENCHMARK(BM_compute_f_dirichlet_saa)->Arg(20000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
