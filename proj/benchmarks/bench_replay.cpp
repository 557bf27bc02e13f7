#include <benchmark/benchmark.h>

#include "ier/interpolation.hpp"
#include "ier/replay.hpp"
#include "ier/rng.hpp"

namespace {

ier::Experience random_real(std::mt19937_64& rng, int states) {
  std::uniform_int_distribution<int> s(0, states - 1);
  std::uniform_int_distribution<int> a(0, ier::kNumActions - 1);
  std::uniform_real_distribution<double> r(-1.0, 1.0);
  return ier::Experience{s(rng), a(rng), r(rng), s(rng), false, false};
}

void BM_StoreReal(benchmark::State& state) {
  ier::InterpolatedReplay replay(100000, 100000, 20000);
  std::mt19937_64 rng(7);
  for (auto _ : state) replay.store_real(random_real(rng, 64));
}
BENCHMARK(BM_StoreReal);

void BM_SampleMinibatch(benchmark::State& state) {
  ier::InterpolatedReplay replay(100000, 100000, 20000);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50000; ++i) replay.store_real(random_real(rng, 64));
  for (auto _ : state) benchmark::DoNotOptimize(replay.sample(32, rng));
}
BENCHMARK(BM_SampleMinibatch);

void BM_InterpolateStep(benchmark::State& state) {
  const ier::GridMap& map = ier::builtin_map("frozenlake8x8");
  ier::TransitionDict dict;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) dict.update(random_real(rng, 64));
  const auto candidates = ier::nonterminal_states(map);
  const ier::InterpolationConfig cfg{250, true};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ier::interpolate_step(dict, 20000, cfg, map, candidates, rng));
}
BENCHMARK(BM_InterpolateStep);

}  // namespace
