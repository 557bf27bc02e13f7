#include "ier/qfunction.hpp"

#include <cmath>
#include <stdexcept>

namespace ier {

LinearQ LinearQ::zeros(int states, int actions) {
  LinearQ q;
  q.num_states = states;
  q.num_actions = actions;
  q.weights.assign(static_cast<std::size_t>(states) * actions, 0.0);
  q.bias.assign(actions, 0.0);
  return q;
}

LinearQ LinearQ::uniform_init(int states, int actions, double range,
                              std::mt19937_64& rng) {
  LinearQ q = zeros(states, actions);
  std::uniform_real_distribution<double> dist(-range, range);
  for (double& w : q.weights) w = dist(rng);
  for (double& b : q.bias) b = dist(rng);
  return q;
}

std::vector<double> LinearQ::predict(int s) const {
  if (s < 0 || s >= num_states)
    throw std::out_of_range("state index out of range");
  std::vector<double> out(bias);
  const std::size_t base = static_cast<std::size_t>(s) * num_actions;
  for (int a = 0; a < num_actions; ++a) out[a] += weights[base + a];
  return out;
}

double LinearQ::max_value(int s) const {
  if (s < 0 || s >= num_states)
    throw std::out_of_range("state index out of range");
  double best = value(s, 0);
  for (int a = 1; a < num_actions; ++a) best = std::max(best, value(s, a));
  return best;
}

LinearQ sync_target(const LinearQ& online) { return online; }

OptimizerState OptimizerState::sgd(double learning_rate) {
  OptimizerState opt;
  opt.kind = OptimizerKind::Sgd;
  opt.learning_rate = learning_rate;
  return opt;
}

OptimizerState OptimizerState::adam(double learning_rate, int states,
                                    int actions, bool amsgrad) {
  OptimizerState opt;
  opt.kind = OptimizerKind::Adam;
  opt.learning_rate = learning_rate;
  opt.amsgrad = amsgrad;
  opt.m_w.assign(static_cast<std::size_t>(states) * actions, 0.0);
  opt.v_w.assign(static_cast<std::size_t>(states) * actions, 0.0);
  opt.m_b.assign(actions, 0.0);
  opt.v_b.assign(actions, 0.0);
  if (amsgrad) {
    opt.vmax_w.assign(opt.v_w.size(), 0.0);
    opt.vmax_b.assign(opt.v_b.size(), 0.0);
  }
  return opt;
}

std::vector<double> td_targets(const LinearQ& target_q,
                               std::span<const Experience> batch,
                               double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("gamma must be in [0,1]");
  std::vector<double> out;
  out.reserve(batch.size());
  for (const Experience& e : batch) {
    out.push_back(e.terminal ? e.reward
                             : e.reward + gamma * target_q.max_value(e.next_state));
  }
  return out;
}

BatchGradient batch_gradient(const LinearQ& q,
                             std::span<const Experience> batch,
                             std::span<const double> targets, LossKind loss) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  if (batch.size() != targets.size())
    throw std::invalid_argument("batch/target size mismatch");

  BatchGradient g;
  g.bias_grad.assign(q.num_actions, 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Experience& e = batch[i];
    const double residual = q.value(e.state, e.action) - targets[i];
    double dpred;
    if (loss == LossKind::MeanSquared) {
      g.loss += residual * residual * inv_n;
      dpred = 2.0 * residual * inv_n;
    } else {  // Huber, delta = 1
      const double abs_r = std::abs(residual);
      g.loss += (abs_r <= 1.0 ? 0.5 * residual * residual : abs_r - 0.5) * inv_n;
      dpred = std::clamp(residual, -1.0, 1.0) * inv_n;
    }
    const std::size_t idx =
        static_cast<std::size_t>(e.state) * q.num_actions + e.action;
    g.weight_grad[idx] += dpred;
    g.bias_grad[e.action] += dpred;
  }
  return g;
}

namespace {

void adam_update(double& param, double& m, double& v, double* vmax,
                 double grad, const OptimizerState& opt) {
  m = opt.beta1 * m + (1.0 - opt.beta1) * grad;
  v = opt.beta2 * v + (1.0 - opt.beta2) * grad * grad;
  const double m_hat = m / (1.0 - std::pow(opt.beta1, opt.step));
  double v_hat = v / (1.0 - std::pow(opt.beta2, opt.step));
  if (vmax != nullptr) {
    // AMSGrad keeps the running maximum of v_hat so the effective step
    // shrinks once gradients get small, instead of staying near alpha
    *vmax = std::max(*vmax, v_hat);
    v_hat = *vmax;
  }
  param -= opt.learning_rate * m_hat / (std::sqrt(v_hat) + opt.epsilon);
}

}  // namespace

double train_step(LinearQ& q, OptimizerState& opt,
                  std::span<const Experience> batch,
                  std::span<const double> targets, LossKind loss) {
  BatchGradient g = batch_gradient(q, batch, targets, loss);
  if (!std::isfinite(g.loss))
    throw std::runtime_error("non-finite training loss");

  if (opt.kind == OptimizerKind::Sgd) {
    for (const auto& [idx, grad] : g.weight_grad)
      q.weights[idx] -= opt.learning_rate * grad;
    for (int a = 0; a < q.num_actions; ++a)
      if (g.bias_grad[a] != 0.0)
        q.bias[a] -= opt.learning_rate * g.bias_grad[a];
  } else {
    // Lazy Adam: moments advance only for parameters with nonzero gradient,
    // so untouched weight rows stay put.
    opt.step += 1;
    for (const auto& [idx, grad] : g.weight_grad)
      adam_update(q.weights[idx], opt.m_w[idx], opt.v_w[idx],
                  opt.amsgrad ? &opt.vmax_w[idx] : nullptr, grad, opt);
    for (int a = 0; a < q.num_actions; ++a)
      if (g.bias_grad[a] != 0.0)
        adam_update(q.bias[a], opt.m_b[a], opt.v_b[a],
                    opt.amsgrad ? &opt.vmax_b[a] : nullptr, g.bias_grad[a],
                    opt);
  }
  return g.loss;
}

}  // namespace ier
