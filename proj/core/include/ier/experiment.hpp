#ifndef IER_EXPERIMENT_HPP
#define IER_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ier/agent.hpp"

namespace ier {

enum class ReplayMode { Vanilla, Interpolated };

struct ReplaySizes {
  std::size_t s_er = 100000;
  std::size_t s_ier = 100000;
  std::size_t s_synthetic = 20000;
};

struct ExperimentConfig {
  AgentConfig agent;
  EnvConfig env;
  ReplaySizes replay;
  ReplayMode mode = ReplayMode::Interpolated;
  InterpolationConfig interpolation;
  long long episodes = 1000;
  int repetitions = 20;
  std::uint64_t base_seed = 1;
  std::string label = "experiment";

  void validate() const;
};

struct RunResult {
  std::uint64_t run_seed = 0;
  std::vector<double> episode_rewards;
  std::vector<double> moving_avg_100;
  std::vector<double> epsilons;
  std::vector<std::pair<long long, long long>> buffer_sizes;  // (real, synthetic)
  double overall_mean = 0.0;
  bool failed = false;
  std::string error;
};

/// Trailing 100-episode mean; partial windows at the start use what exists.
std::vector<double> moving_average_100(const std::vector<double>& rewards);

/// One complete seeded run.
RunResult run_single(const ExperimentConfig& cfg, std::uint64_t run_seed);

/// All repetitions, seeds derive(base_seed, i). Output order and content do
/// not depend on `parallelism`. Runs that abort are returned with `failed`
/// set instead of tearing down the experiment.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg,
                                      int parallelism = 1);

struct AggregateResult {
  std::vector<double> episode_mean;  // of moving_avg_100, across repetitions
  std::vector<double> episode_sd;
  double overall_mean = 0.0;  // pooled per-episode rewards
  double overall_sd = 0.0;    // pooled moving_avg_100 values
};

AggregateResult aggregate(const std::vector<RunResult>& results);

/// First episode whose full-window 100-episode average reaches `threshold`.
std::optional<long long> solved_at(const RunResult& result, double threshold);

/// The paper's study: 3 exploration lengths x (baseline + 6 IER variants).
std::vector<ExperimentConfig> builtin_grid();

}  // namespace ier

#endif
