#include <benchmark/benchmark.h>

#include <cmath>

#include "ncl/capacity.hpp"
#include "ncl/coding.hpp"
#include "ncl/infomeasures.hpp"
#include "ncl/model.hpp"
#include "ncl/pipeline.hpp"
#include "ncl/typicality.hpp"

namespace {

ncl::Alphabet pairs() { return ncl::Alphabet({"00", "01", "10", "11"}); }
ncl::Alphabet bits() { return ncl::Alphabet({"0", "1"}); }

ncl::NoisyComputationInstance and_bsc(double p) {
    const ncl::DetFunction f(pairs(), bits(), {0, 0, 0, 1});
    return ncl::NoisyComputationInstance(
        ncl::Pmf(pairs(), {0.25, 0.25, 0.25, 0.25}), f,
        ncl::compose(ncl::fn_as_channel(f), ncl::bsc(p)));
}

void BM_TypicalInputRate(benchmark::State& state) {
    const auto inst = and_bsc(0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ncl::typical_input_rate(inst).b);
    }
}
BENCHMARK(BM_TypicalInputRate);

void BM_CapacityIid(benchmark::State& state) {
    const auto inst = and_bsc(0.1);
    ncl::CapacityOptions opts;
    opts.restarts = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ncl::capacity_iid(inst.f, inst.F, opts).value);
    }
}
BENCHMARK(BM_CapacityIid)->Arg(4)->Arg(16)->Arg(32);

void BM_BlahutArimoto(benchmark::State& state) {
    const ncl::DMChannel chan = ncl::bsc(0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ncl::blahut_arimoto(chan));
    }
}
BENCHMARK(BM_BlahutArimoto);

void BM_TypicalSet(benchmark::State& state) {
    const ncl::Pmf p(bits(), {0.25, 0.75});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ncl::typical_ranks({p, n, 0.15}).size());
    }
}
BENCHMARK(BM_TypicalSet)->Arg(8)->Arg(12)->Arg(16);

void BM_BuildFeinsteinCode(benchmark::State& state) {
    const auto inst = and_bsc(0.05);
    const int n = static_cast<int>(state.range(0));
    const double h = ncl::typical_input_rate(inst).h_x_given_y;
    ncl::FeinsteinOptions opts;
    opts.delta_y = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ncl::build_feinstein_code(inst, n, 0.25, h + std::log(16.5) / n, opts).achieved_m());
    }
}
BENCHMARK(BM_BuildFeinsteinCode)->Arg(5)->Arg(8);

void BM_SimulatePipeline(benchmark::State& state) {
    const auto inst = and_bsc(0.05);
    const ncl::SourceFunction outer{ncl::Pmf(pairs(), {0.25, 0.25, 0.25, 0.25}),
                                    ncl::DetFunction(pairs(), bits(), {0, 0, 0, 1})};
    const double h = ncl::typical_input_rate(inst).h_x_given_y;
    ncl::FeinsteinOptions opts;
    opts.delta_y = 10.0;
    ncl::FeinsteinCode code =
        ncl::build_feinstein_code(inst, 5, 0.25, h + std::log(16.5) / 5, opts);
    const ncl::ReliablePipeline p = ncl::build_pipeline(outer, inst, 5, 4, std::move(code), 0.15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ncl::simulate(p, 10000, 42).avg_error);
    }
}
BENCHMARK(BM_SimulatePipeline);

} // namespace

BENCHMARK_MAIN();
