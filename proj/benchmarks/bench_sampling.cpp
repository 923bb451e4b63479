#include <benchmark/benchmark.h>

#include "levytype/levy_sampler.hpp"
#include "levytype/rng.hpp"
#include "levytype/simulate.hpp"
#include "levytype/stable_sampler.hpp"

using namespace levytype;

static void BM_SampleStable(benchmark::State& state) {
    const double alpha = state.range(0) / 10.0;
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_stable(alpha, rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleStable)->Arg(8)->Arg(10)->Arg(15)->Arg(20);

static void BM_TruncatedStableIncrement(benchmark::State& state) {
    const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
    const LevyIncrementSampler s(symmetric_stable(1.5), {eps, IncrementMode::Truncated});
    Rng rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(s.sample(1e-3, rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TruncatedStableIncrement)->Arg(2)->Arg(3)->Arg(4);

static void BM_GluedSde(benchmark::State& state) {
    SimulationParams p;
    p.horizon = 0.1;
    p.dt = 1e-3;
    p.paths = static_cast<std::size_t>(state.range(0));
    const SamplerOptions opts{1e-3, IncrementMode::ExactStable};
    for (auto _ : state) {
        const auto e = simulate_glued_sde(symmetric_stable(1.2), symmetric_stable(1.8), PointMass{0.0}, p, opts);
        benchmark::DoNotOptimize(e.states.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_GluedSde)->Arg(1000)->Unit(benchmark::kMillisecond);
