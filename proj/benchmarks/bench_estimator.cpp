// Microbenchmarks for the estimation hot path. The per-photon grid update
// (one table pass plus one argmax pass over G points) dominates ensemble
// runtime: a full-scale setting is 500 trials x 300 photons x G=10000.

#include <benchmark/benchmark.h>

#include <memory>

#include "aqse/adaptive_estimator.hpp"
#include "aqse/outcome_source.hpp"

namespace {

using namespace aqse;

void BM_TableBuild(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        OutcomeLogTables tables(grid);
        benchmark::DoNotOptimize(tables.log_p(1).data());
    }
    state.SetItemsProcessed(state.iterations() * grid * 2);
}
BENCHMARK(BM_TableBuild)->Arg(10000)->Arg(100000);

void BM_UpdateStep(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const auto tables = std::make_shared<const OutcomeLogTables>(grid);
    AdaptiveEstimator estimator(grid, AngleRad(0.3), tables);
    int outcome = 1;
    for (auto _ : state) {
        estimator.update(outcome);
        outcome = 3 - outcome;
        benchmark::DoNotOptimize(estimator.mle_index());
    }
    state.SetItemsProcessed(state.iterations() * grid);
}
BENCHMARK(BM_UpdateStep)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Trial300(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    const auto tables = std::make_shared<const OutcomeLogTables>(grid);
    const AngleRad theta_true = AngleRad::from_degrees(60.0);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        SimulatedSource source(mix_seed(1, trial++));
        const Trajectory traj =
            run_sequence(theta_true, 300, source, grid, AngleRad(0.0), tables);
        benchmark::DoNotOptimize(traj.steps.back().mle_after.value());
    }
    state.SetItemsProcessed(state.iterations() * 300 * grid);
}
BENCHMARK(BM_Trial300)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SimulatedDraw(benchmark::State& state) {
    std::mt19937_64 rng(42);
    const AngleRad theta(0.4);
    const AngleRad setting(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulated_draw(theta, setting, rng));
    }
}
BENCHMARK(BM_SimulatedDraw);

}  // namespace

BENCHMARK_MAIN();
