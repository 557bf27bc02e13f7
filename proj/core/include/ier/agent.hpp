#ifndef IER_AGENT_HPP
#define IER_AGENT_HPP

#include <random>
#include <vector>

#include "ier/grid.hpp"
#include "ier/interpolation.hpp"
#include "ier/qfunction.hpp"
#include "ier/replay.hpp"
#include "ier/rng.hpp"

namespace ier {

struct AgentConfig {
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_min = 0.05;
  long long t_exploration = 500;       // episodes of linear decay
  long long target_sync_interval = 300;  // environment steps
  int minibatch_size = 32;
  long long learn_start_size = 300;    // combined buffer size gating training
  OptimizerKind optimizer = OptimizerKind::Adam;
  double learning_rate = 0.0005;
  LossKind loss = LossKind::MeanSquared;

  void validate() const;
};

struct EpisodeRecord {
  long long episode_index = 0;
  double total_reward = 0.0;
  int steps = 0;
  double epsilon_at_start = 0.0;
};

/// Linearly decaying epsilon, clamped at epsilon_min after t_exploration
/// episodes.
double epsilon_at(const AgentConfig& cfg, long long episode);

/// Epsilon-greedy selection; exploitation breaks ties uniformly at random.
Action select_action(const LinearQ& q, int s, double epsilon,
                     std::mt19937_64& rng);

struct RunSetup {
  EnvConfig env;
  AgentConfig agent;
  InterpolationConfig interpolation;
  std::vector<int> interpolation_states;  // query candidates (non-terminal)
};

/// One episode of the DQN loop: act, step, store, update dictionary,
/// interpolate, train on a minibatch once the buffer is warm, and sync the
/// target network every target_sync_interval environment steps.
template <class Replay>
EpisodeRecord run_episode(const RunSetup& setup, long long episode,
                          LinearQ& online, LinearQ& target,
                          OptimizerState& opt, Replay& replay,
                          TransitionDict& dict, RngStreams& rng,
                          long long& global_step) {
  const double eps = epsilon_at(setup.agent, episode);
  EpisodeRecord rec{episode, 0.0, 0, eps};
  EnvState state = reset(setup.env);
  while (!state.terminal) {
    const Action a = select_action(online, state.position, eps, rng.action);
    const StepResult out = step(setup.env, state, a, rng.env);
    rec.total_reward += out.reward;
    rec.steps += 1;

    const Experience e{state.position, static_cast<int>(a), out.reward,
                       out.state.position, out.state.terminal, false};
    replay.store_real(e);
    dict.update(e);

    if (setup.interpolation.enabled) {
      const SyntheticBatch batch = interpolate_step(
          dict, static_cast<long long>(replay.real_size()),
          setup.interpolation, setup.env.map, setup.interpolation_states,
          rng.interp);
      for (const Experience& se : batch.items) replay.store_synthetic(se);
    }

    const auto stored = static_cast<long long>(replay.size());
    if (stored >= setup.agent.learn_start_size &&
        stored >= setup.agent.minibatch_size) {
      const auto minibatch = replay.sample(
          static_cast<std::size_t>(setup.agent.minibatch_size), rng.sample);
      const auto targets = td_targets(target, minibatch, setup.agent.gamma);
      train_step(online, opt, minibatch, targets, setup.agent.loss);
    }

    global_step += 1;
    if (global_step % setup.agent.target_sync_interval == 0)
      target = sync_target(online);

    state = out.state;
  }
  return rec;
}

}  // namespace ier

#endif
