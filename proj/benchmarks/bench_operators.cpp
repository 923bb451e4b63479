#include <benchmark/benchmark.h>

#include "levytype/generator.hpp"
#include "levytype/martingale.hpp"
#include "levytype/symbol.hpp"

using namespace levytype;

namespace {

GeneratorSpec spec_for(int which) {
    switch (which) {
        case 0: return LevyGenerator{brownian(1.0)};
        case 1: return LevyGenerator{symmetric_stable(1.0)};
        case 2: return StableLikeGenerator{StabilityIndex::step(1.2, 1.8)};
        default: return GluedApproxGenerator{symmetric_stable(1.2), symmetric_stable(1.8), 10};
    }
}

}  // namespace

static void BM_GeneratorIntegral(benchmark::State& state) {
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    const auto f = canonical_test_functions()[1];
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_generator_integral(spec, f, x));
        x = x > 1.0 ? -1.0 : x + 0.01;
    }
}
BENCHMARK(BM_GeneratorIntegral)->DenseRange(0, 3);

static void BM_GeneratorFourier(benchmark::State& state) {
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    const auto f = canonical_test_functions()[1];
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_generator_fourier(spec, f, x));
        x = x > 1.0 ? -1.0 : x + 0.01;
    }
}
BENCHMARK(BM_GeneratorFourier)->DenseRange(0, 3);

static void BM_GeneratorCacheBuild(benchmark::State& state) {
    const GeneratorSpec spec = StableLikeGenerator{StabilityIndex::step(1.2, 1.8)};
    const auto f = canonical_test_functions()[0];
    for (auto _ : state) {
        GeneratorCache cache(spec, f, -5.0, 5.0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(cache(0.3));
    }
}
BENCHMARK(BM_GeneratorCacheBuild)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_SymbolEval(benchmark::State& state) {
    const auto q = glued_symbol(symmetric_stable(1.2), symmetric_stable(1.8));
    double xi = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(q(0.1, xi));
        xi = xi > 100.0 ? 0.5 : xi * 1.01;
    }
}
BENCHMARK(BM_SymbolEval);
