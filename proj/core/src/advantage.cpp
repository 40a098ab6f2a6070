#include "p3o/advantage.hpp"

#include <cmath>

#include "p3o/error.hpp"

namespace p3o {

std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma,
                                       double bootstrap) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("discounted_returns: gamma out of [0,1)");
  std::vector<double> returns(rewards.size());
  double acc = bootstrap;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    acc = rewards[i] + gamma * acc;
    returns[i] = acc;
  }
  return returns;
}

std::vector<double> td_residuals(const std::vector<double>& rewards,
                                 const ValueEstimate& values, double gamma) {
  if (values.values.size() != rewards.size()) {
    throw InputError("td_residuals: rewards/values length mismatch");
  }
  std::vector<double> deltas(rewards.size());
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    const double next_v = (t + 1 < rewards.size()) ? values.values[t + 1] : values.bootstrap;
    deltas[t] = rewards[t] + gamma * next_v - values.values[t];
  }
  return deltas;
}

std::vector<double> gae(const std::vector<double>& deltas, double gamma, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InputError("gae: tau out of [0,1]");
  std::vector<double> adv(deltas.size());
  double acc = 0.0;
  for (std::size_t i = deltas.size(); i-- > 0;) {
    acc = deltas[i] + gamma * tau * acc;
    adv[i] = acc;
  }
  return adv;
}

std::pair<double, ParamVector> value_loss_and_grad(
    const MlpSpec& spec, const ParamVector& params,
    const std::vector<std::vector<double>>& states, const std::vector<double>& targets) {
  if (states.size() != targets.size()) {
    throw InputError("value_loss_and_grad: states/targets count mismatch");
  }
  if (states.empty()) throw InputError("value_loss_and_grad: empty batch");
  if (spec.output_dim() != 1) throw ConfigError("value_loss_and_grad: value net must be scalar");
  for (double t : targets) {
    if (!std::isfinite(t)) throw InputError("value_loss_and_grad: non-finite target");
  }

  const double inv_n = 1.0 / static_cast<double>(states.size());
  double loss = 0.0;
  ParamVector grad(params.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double v = mlp_forward(spec, params, states[i])[0];
    const double err = v - targets[i];
    loss += 0.5 * err * err * inv_n;
    grad += mlp_backward(spec, params, states[i], {err * inv_n});
  }
  return {loss, std::move(grad)};
}

std::vector<double> normalize_advantages(const std::vector<double>& adv) {
  if (adv.empty()) throw InputError("normalize_advantages: empty input");
  const double n = static_cast<double>(adv.size());
  double mean = 0.0;
  for (double a : adv) mean += a;
  mean /= n;
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  var /= n;
  const double std_dev = std::sqrt(var);
  std::vector<double> out(adv.size());
  if (std_dev < 1e-8) {
    for (std::size_t i = 0; i < adv.size(); ++i) out[i] = adv[i] - mean;
  } else {
    for (std::size_t i = 0; i < adv.size(); ++i) out[i] = (adv[i] - mean) / std_dev;
  }
  return out;
}

AdvantageSet segment_advantages(const std::vector<double>& rewards,
                                const std::vector<bool>& terminals,
                                const std::vector<bool>& truncations,
                                const std::vector<double>& state_values,
                                const std::vector<double>& next_values, double gamma,
                                double tau, bool use_gae) {
  const std::size_t n = rewards.size();
  if (terminals.size() != n || truncations.size() != n || state_values.size() != n ||
      next_values.size() != n) {
    throw InputError("segment_advantages: length mismatch");
  }
  const double effective_tau = use_gae ? tau : 1.0;

  AdvantageSet out;
  out.advantages.resize(n);
  out.value_targets.resize(n);
  double carry = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const bool episode_end = terminals[i] || truncations[i];
    const double next_v = terminals[i] ? 0.0 : next_values[i];
    const double delta = rewards[i] + gamma * next_v - state_values[i];
    if (episode_end) carry = 0.0;
    carry = delta + gamma * effective_tau * carry;
    out.advantages[i] = carry;
    out.value_targets[i] = carry + state_values[i];
  }
  return out;
}

}  // namespace p3o
