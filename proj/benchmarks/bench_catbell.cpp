#include "catbell/bell.hpp"
#include "catbell/experiment.hpp"
#include "catbell/fock_oracle.hpp"

#include <benchmark/benchmark.h>

using namespace catbell;

static void BM_Cpi2Offdiag(benchmark::State& state) {
    const CatParams p(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cpi2_offdiag(p, 0.9));
    }
}
BENCHMARK(BM_Cpi2Offdiag)->Arg(1)->Arg(3)->Arg(6);

static void BM_SMax(benchmark::State& state) {
    const CatParams p(6.0);
    const DetectorModel d(0.95);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_max(p, d).s_max);
    }
}
BENCHMARK(BM_SMax);

static void BM_ThresholdEta(benchmark::State& state) {
    const CatParams p(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(threshold_eta(p, 1.0));
    }
}
BENCHMARK(BM_ThresholdEta)->Unit(benchmark::kMillisecond);

static void BM_DichotomicElementDirect(benchmark::State& state) {
    const CatParams p(4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dichotomic_element(Dichotomic::cpi2, 4.0, -4.0, p, 0.9));
    }
}
BENCHMARK(BM_DichotomicElementDirect)->Unit(benchmark::kMillisecond);

static void BM_BuildSampler(benchmark::State& state) {
    const CatParams p(6.0);
    const DetectorModel d(1.0);
    const MeasurementSetting m(SpinDirection::x_axis(), HomodynePhase::momentum());
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_sampler(m, p, d).probability_up());
    }
}
BENCHMARK(BM_BuildSampler)->Unit(benchmark::kMillisecond);

static void BM_SamplerDraw(benchmark::State& state) {
    const Sampler sampler(MeasurementSetting(SpinDirection::x_axis(), HomodynePhase::momentum()), CatParams(6.0),
                          DetectorModel(1.0));
    ShotStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.draw(rng));
    }
}
BENCHMARK(BM_SamplerDraw);

static void BM_OracleSMax(benchmark::State& state) {
    const CatParams p(static_cast<double>(state.range(0)));
    const DetectorModel d(0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_s_max(p, d));
    }
}
BENCHMARK(BM_OracleSMax)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
