#include <benchmark/benchmark.h>

#include "qpc/experiment.hpp"
#include "qpc/session.hpp"

using namespace qpc;

static void BM_MakeCarrierState(benchmark::State& state) {
  for (auto _ : state) {
    PureState st = make_state(StateKind::EightQubit);
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_MakeCarrierState);

static void BM_FullZSample(benchmark::State& state) {
  RandomStream rng(1);
  for (auto _ : state) {
    PureState st = make_state(StateKind::EightQubit);
    int parity = 0;
    for (int q = 1; q <= 8; ++q) parity ^= st.measure(q, Basis::Z, rng);
    benchmark::DoNotOptimize(parity);
  }
}
BENCHMARK(BM_FullZSample);

static void BM_BellMeasurePair(benchmark::State& state) {
  RandomStream rng(2);
  for (auto _ : state) {
    PureState st = make_state(StateKind::EightQubit);
    benchmark::DoNotOptimize(st.measure_bell(1, 2, rng));
    benchmark::DoNotOptimize(st.measure_bell(3, 4, rng));
  }
}
BENCHMARK(BM_BellMeasurePair);

static void BM_ProbeOnCarrier(benchmark::State& state) {
  const ProbeUnitary probe = ProbeUnitary::cnot();
  for (auto _ : state) {
    PureState st = make_state(StateKind::EightQubit);
    st.attach(PureState::computational(1, 0));
    const int pair[2] = {3, 9};
    st.apply_unitary(pair, probe.matrix());
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_ProbeOnCarrier);

static void BM_Session(benchmark::State& state) {
  SessionConfig cfg;
  cfg.n_bits = int(state.range(0));
  cfg.x = 0;
  cfg.y = 0;
  cfg.decoys_per_channel = 16;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    benchmark::DoNotOptimize(run_session(cfg));
  }
}
BENCHMARK(BM_Session)->Arg(8)->Arg(32)->Arg(64);

static void BM_DetectionTrialBatch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(detection_experiment(
        intercept_resend(ChannelTarget::ToAlice), 8, 64, 3, nullptr, 1));
  }
}
BENCHMARK(BM_DetectionTrialBatch);

BENCHMARK_MAIN();
