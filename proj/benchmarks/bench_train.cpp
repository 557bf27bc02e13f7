#include <benchmark/benchmark.h>

#include "ier/qfunction.hpp"

namespace {

void BM_TrainStepAdam(benchmark::State& state) {
  std::mt19937_64 rng(11);
  ier::LinearQ online = ier::LinearQ::uniform_init(64, 4, 0.05, rng);
  ier::LinearQ target = ier::sync_target(online);
  auto opt = ier::OptimizerState::adam(0.0005, 64, 4);

  std::uniform_int_distribution<int> s(0, 63);
  std::uniform_int_distribution<int> a(0, 3);
  std::uniform_real_distribution<double> r(-1.0, 1.0);
  std::vector<ier::Experience> batch;
  for (int i = 0; i < 32; ++i)
    batch.push_back({s(rng), a(rng), r(rng), s(rng), false, false});

  for (auto _ : state) {
    const auto targets = ier::td_targets(target, batch, 0.95);
    benchmark::DoNotOptimize(ier::train_step(online, opt, batch, targets));
  }
}
BENCHMARK(BM_TrainStepAdam);

}  // namespace

BENCHMARK_MAIN();
