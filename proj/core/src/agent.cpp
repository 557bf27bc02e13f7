#include "ier/agent.hpp"

#include <stdexcept>

namespace ier {

void AgentConfig::validate() const {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("gamma must be in [0,1]");
  if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_min < 0.0 ||
      epsilon_min > 1.0)
    throw std::invalid_argument("epsilon bounds must be in [0,1]");
  if (epsilon_min > epsilon_start)
    throw std::invalid_argument("epsilon_min must not exceed epsilon_start");
  if (t_exploration < 1)
    throw std::invalid_argument("t_exploration must be positive");
  if (target_sync_interval < 1)
    throw std::invalid_argument("target_sync_interval must be positive");
  if (minibatch_size < 1)
    throw std::invalid_argument("minibatch_size must be positive");
  if (learn_start_size < 1)
    throw std::invalid_argument("learn_start_size must be positive");
  if (learning_rate <= 0.0)
    throw std::invalid_argument("learning_rate must be positive");
}

double epsilon_at(const AgentConfig& cfg, long long episode) {
  if (episode < 0) throw std::invalid_argument("negative episode index");
  const double progress =
      std::min(1.0, static_cast<double>(episode) /
                        static_cast<double>(cfg.t_exploration));
  return cfg.epsilon_start - (cfg.epsilon_start - cfg.epsilon_min) * progress;
}

Action select_action(const LinearQ& q, int s, double epsilon,
                     std::mt19937_64& rng) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("epsilon must be in [0,1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    std::uniform_int_distribution<int> any(0, q.num_actions - 1);
    return static_cast<Action>(any(rng));
  }
  const std::vector<double> values = q.predict(s);
  double best = values[0];
  for (int a = 1; a < q.num_actions; ++a) best = std::max(best, values[a]);
  std::vector<int> ties;
  for (int a = 0; a < q.num_actions; ++a)
    if (values[a] == best) ties.push_back(a);
  if (ties.size() == 1) return static_cast<Action>(ties.front());
  std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
  return static_cast<Action>(ties[pick(rng)]);
}

}  // namespace ier
