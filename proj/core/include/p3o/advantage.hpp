#ifndef P3O_ADVANTAGE_HPP_
#define P3O_ADVANTAGE_HPP_

#include <vector>

#include "p3o/mlp.hpp"
#include "p3o/param_vector.hpp"

namespace p3o {

/// Per-timestep value predictions for a trajectory plus the bootstrap value
/// of the state after the last step (zero when the trajectory ended in a
/// true terminal state).
struct ValueEstimate {
  std::vector<double> values;
  double bootstrap = 0.0;
};

/// Advantages plus the matching regression targets for the value function.
struct AdvantageSet {
  std::vector<double> advantages;
  std::vector<double> value_targets;
};

/// G_t = r_t + gamma * G_{t+1}, seeded with the bootstrap value.
std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma,
                                       double bootstrap);

/// delta_t = r_t + gamma * v(s_{t+1}) - v(s_t), with the bootstrap value
/// standing in for v(s_T).
std::vector<double> td_residuals(const std::vector<double>& rewards,
                                 const ValueEstimate& values, double gamma);

/// Generalized advantage estimation: A_t = sum_l (gamma*tau)^l delta_{t+l}.
std::vector<double> gae(const std::vector<double>& deltas, double gamma, double tau);

/// Mean-squared-error value loss 0.5 * mean((v - target)^2) and its exact
/// parameter gradient.
std::pair<double, ParamVector> value_loss_and_grad(const MlpSpec& spec,
                                                   const ParamVector& params,
                                                   const std::vector<std::vector<double>>& states,
                                                   const std::vector<double>& targets);

/// Shifts to zero mean and scales to unit population std; if the std is
/// below 1e-8 only the mean is subtracted.
std::vector<double> normalize_advantages(const std::vector<double>& adv);

/// Advantages and value targets for one stored segment, possibly spanning
/// several episodes. terminals/truncations mark where the GAE recursion is
/// cut: a terminal bootstraps with zero, a truncation with the value of the
/// next state. next_values[t] is v(next_state_t) under the current value
/// function. With use_gae false, Monte-Carlo advantages are used instead
/// (equivalent to tau = 1). Value targets are advantage + state value,
/// computed before any normalization.
AdvantageSet segment_advantages(const std::vector<double>& rewards,
                                const std::vector<bool>& terminals,
                                const std::vector<bool>& truncations,
                                const std::vector<double>& state_values,
                                const std::vector<double>& next_values, double gamma,
                                double tau, bool use_gae);

}  // namespace p3o

#endif  // P3O_ADVANTAGE_HPP_
