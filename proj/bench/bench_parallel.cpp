// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "chanrank/ces_ranking.hpp"
#include "chanrank/fit.hpp"
#include "chanrank/spectrum_sim.hpp"

namespace {

using namespace chanrank;

std::vector<ChannelObservation> random_observations(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> snr(-20.0, 20.0);
  std::uniform_real_distribution<double> occ(0.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 6.0);
  std::vector<ChannelObservation> out(n);
  for (auto& o : out) o = {freq(rng), snr(rng), occ(rng)};
  return out;
}

struct FitFixture {
  std::vector<ChannelObservation> observations = random_observations(64, 7);
  std::vector<ReferenceEntry> reference;
  RankingModel model = RankingModel::defaults();
  FitGrid grid = FitGrid::uniform(0.01, 0.01);

  FitFixture() {
    const auto ranked = rank_channels_serial(observations, model.snr_curve, model.occ_curve,
                                             CesParams(0.3, 0.7, 0.4));
    for (std::size_t i = 0; i < observations.size(); ++i) {
      for (const auto& r : ranked) {
        if (r.observation == observations[i]) reference.push_back({i, r.rank});
      }
    }
  }
};

void BM_FitSerial(benchmark::State& state) {
  FitFixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_ces_params_serial(f.observations, f.reference, f.model.snr_curve, f.model.occ_curve, f.grid));
  }
}
BENCHMARK(BM_FitSerial)->Unit(benchmark::kMillisecond);

void BM_FitParallel(benchmark::State& state) {
  FitFixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_ces_params(f.observations, f.reference, f.model.snr_curve, f.model.occ_curve, f.grid));
  }
}
BENCHMARK(BM_FitParallel)->Unit(benchmark::kMillisecond);

void BM_RankSerial(benchmark::State& state) {
  const auto obs = random_observations(static_cast<std::size_t>(state.range(0)), 11);
  const auto model = RankingModel::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_channels_serial(obs, model.snr_curve, model.occ_curve, model.params));
  }
}
BENCHMARK(BM_RankSerial)->Arg(1 << 12)->Arg(1 << 16);

void BM_RankParallel(benchmark::State& state) {
  const auto obs = random_observations(static_cast<std::size_t>(state.range(0)), 11);
  const auto model = RankingModel::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(rank_channels(obs, model));
}
BENCHMARK(BM_RankParallel)->Arg(1 << 12)->Arg(1 << 16);

Scenario bench_scenario() {
  Scenario s;
  s.n_slots = 2000;
  s.samples_per_slot = 100;
  for (int i = 0; i < 16; ++i) {
    s.channels.push_back({2.4 + 0.005 * i, -10.0 + 2.0 * i, 0.05 + 0.05 * i, 4.0, 1.0});
  }
  return s;
}

void BM_ScenarioSerial(benchmark::State& state) {
  const Scenario s = bench_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scenario_serial(s, 42));
}
BENCHMARK(BM_ScenarioSerial)->Unit(benchmark::kMillisecond);

void BM_ScenarioParallel(benchmark::State& state) {
  const Scenario s = bench_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scenario(s, 42));
}
BENCHMARK(BM_ScenarioParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
