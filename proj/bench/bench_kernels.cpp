// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

// Serial reference against OpenMP kernel for the two parallel workloads.

#include "tvisi/experiment.hpp"
#include "tvisi/verify.hpp"
#include "tvisi/waterfill.hpp"

#include <benchmark/benchmark.h>

#include <stdexcept>

namespace {

tvisi::ExperimentConfig experiment_config(std::size_t n)
{
    const tvisi::ChannelSpec spec({1.0, 0.5, 0.5}, {0.001, 0.001, 0.001});
    const double P = 0.1;
    const double rate = 0.25 * tvisi::bound_report(spec, P).C_LB1;
    return {spec, tvisi::ChannelLaw::iid_uniform(0), n, rate, P, std::nullopt, 200, 7};
}

void BM_ExperimentSerial(benchmark::State& state)
{
    const tvisi::ErrorExperiment e(experiment_config(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(e.run_serial());
}

void BM_ExperimentParallel(benchmark::State& state)
{
    const tvisi::ErrorExperiment e(experiment_config(static_cast<std::size_t>(state.range(0))));
    if (e.run() != e.run_serial()) throw std::logic_error("parallel experiment diverged from the serial reference");
    for (auto _ : state) benchmark::DoNotOptimize(e.run());
}

tvisi::VerifyConfig verify_config()
{
    tvisi::VerifyConfig c;
    c.seed = 3;
    c.instances = 20;
    c.max_n = 32;
    return c;
}

void BM_VerifySerial(benchmark::State& state)
{
    const tvisi::VerifyConfig c = verify_config();
    for (auto _ : state) benchmark::DoNotOptimize(tvisi::run_verification_serial(c));
}

void BM_VerifyParallel(benchmark::State& state)
{
    const tvisi::VerifyConfig c = verify_config();
    for (auto _ : state) benchmark::DoNotOptimize(tvisi::run_verification(c));
}

} // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
