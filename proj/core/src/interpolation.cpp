#include "ier/interpolation.hpp"

#include <cmath>
#include <stdexcept>

namespace ier {

SyntheticBatch interpolate_step(const TransitionDict& dict, long long real_count,
                                const InterpolationConfig& cfg,
                                const GridMap& map,
                                const std::vector<int>& candidate_states,
                                std::mt19937_64& rng) {
  SyntheticBatch batch;
  if (!cfg.enabled || real_count < cfg.c_start_interpolation) return batch;
  if (candidate_states.empty()) return batch;

  std::uniform_int_distribution<std::size_t> dist(0, candidate_states.size() - 1);
  batch.query_state = candidate_states[dist(rng)];

  for (const ActionView& view : dict.lookup(batch.query_state)) {
    for (int next : *view.next_states) {
      batch.items.push_back(Experience{batch.query_state, view.action,
                                       view.reward_avg, next,
                                       map.is_terminal_tile(next), true});
    }
  }
  return batch;
}

SyntheticBatch interpolate_step(const TransitionDict& dict, long long real_count,
                                const InterpolationConfig& cfg,
                                const EnvConfig& env, std::mt19937_64& rng) {
  return interpolate_step(dict, real_count, cfg, env.map,
                          nonterminal_states(env.map), rng);
}

double expected_vs_average_gap(const TransitionDict& dict, const EnvConfig& env,
                               int s, Action a) {
  const TransitionStats* st = dict.find(s, static_cast<int>(a));
  if (st == nullptr || st->count == 0)
    throw std::invalid_argument("no observations for (s,a)");
  return std::abs(st->mean() - expected_reward(env, s, a));
}

}  // namespace ier
