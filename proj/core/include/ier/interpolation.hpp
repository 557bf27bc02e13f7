#ifndef IER_INTERPOLATION_HPP
#define IER_INTERPOLATION_HPP

#include <random>
#include <vector>

#include "ier/grid.hpp"
#include "ier/replay.hpp"

namespace ier {

struct InterpolationConfig {
  long long c_start_interpolation = 250;
  bool enabled = true;
};

/// Synthetic experiences produced by one interpolation call. All items
/// start at `query_state`; at most one per (action, distinct next state).
struct SyntheticBatch {
  std::vector<Experience> items;
  int query_state = -1;
};

/// Reward-averaging interpolant. Draws a query state uniformly from
/// `candidate_states` and, for every action observed there, emits one
/// synthetic experience per distinct observed next state carrying the
/// dictionary's running reward average. Empty when disabled or before
/// `real_count` reaches the warm-up threshold (no RNG draw happens then).
SyntheticBatch interpolate_step(const TransitionDict& dict, long long real_count,
                                const InterpolationConfig& cfg,
                                const GridMap& map,
                                const std::vector<int>& candidate_states,
                                std::mt19937_64& rng);

/// Convenience overload querying the non-terminal states of `env.map`.
SyntheticBatch interpolate_step(const TransitionDict& dict, long long real_count,
                                const InterpolationConfig& cfg,
                                const EnvConfig& env, std::mt19937_64& rng);

/// |running reward average - analytic expected reward| for an observed
/// (s,a); a diagnostic of interpolation accuracy.
double expected_vs_average_gap(const TransitionDict& dict, const EnvConfig& env,
                               int s, Action a);

}  // namespace ier

#endif
