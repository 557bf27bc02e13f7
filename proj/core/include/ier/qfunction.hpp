#ifndef IER_QFUNCTION_HPP
#define IER_QFUNCTION_HPP

#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "ier/replay.hpp"

namespace ier {

/// Linear action-value approximator over one-hot state inputs: a |S| x |A|
/// weight matrix plus one bias per action. Prediction for state s is the
/// weight row s plus the bias vector.
struct LinearQ {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> weights;  // row-major, num_states * num_actions
  std::vector<double> bias;     // num_actions

  static LinearQ zeros(int states, int actions);
  static LinearQ uniform_init(int states, int actions, double range,
                              std::mt19937_64& rng);

  double value(int s, int a) const {
    return weights[static_cast<std::size_t>(s) * num_actions + a] + bias[a];
  }
  std::vector<double> predict(int s) const;
  double max_value(int s) const;
};

/// Independent copy; later updates to the online network leave it untouched.
LinearQ sync_target(const LinearQ& online);

enum class OptimizerKind { Sgd, Adam };
enum class LossKind { MeanSquared, Huber };

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 0.0005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool amsgrad = false;
  long long step = 0;
  std::vector<double> m_w, v_w;  // weight moments (Adam)
  std::vector<double> m_b, v_b;  // bias moments (Adam)
  std::vector<double> vmax_w, vmax_b;  // running max of v_hat (AMSGrad)

  static OptimizerState sgd(double learning_rate);
  static OptimizerState adam(double learning_rate, int states, int actions,
                             bool amsgrad = false);
};

/// Bootstrapped targets: r + gamma * max_a' Q_target(s', a'), truncated to
/// r on terminal transitions.
std::vector<double> td_targets(const LinearQ& target_q,
                               std::span<const Experience> batch, double gamma);

struct BatchGradient {
  double loss = 0.0;
  std::unordered_map<std::size_t, double> weight_grad;  // flat index -> d/dw
  std::vector<double> bias_grad;                        // per action
};

/// Gradient of the mean batch loss w.r.t. the touched parameters.
BatchGradient batch_gradient(const LinearQ& q, std::span<const Experience> batch,
                             std::span<const double> targets,
                             LossKind loss = LossKind::MeanSquared);

/// One optimizer step on the mean TD loss. Only weight rows of batch states
/// and bias entries of batch actions change. Returns the batch loss;
/// throws std::runtime_error on a non-finite loss.
double train_step(LinearQ& q, OptimizerState& opt,
                  std::span<const Experience> batch,
                  std::span<const double> targets,
                  LossKind loss = LossKind::MeanSquared);

}  // namespace ier

#endif
