#include "p3o/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "p3o/error.hpp"

namespace p3o {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2*pi)
constexpr double kSnapshotProbFloor = 1e-12;

std::vector<double> softmax(const std::vector<double>& logits) {
  const double zmax = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - zmax);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

int discrete_action(const ActionDistribution& dist, const Action& action) {
  const int* idx = std::get_if<int>(&action);
  if (idx == nullptr) throw InputError("policy: expected a discrete action");
  if (*idx < 0 || static_cast<std::size_t>(*idx) >= dist.action_count()) {
    throw InputError("policy: action index " + std::to_string(*idx) + " out of range");
  }
  return *idx;
}

const std::vector<double>& continuous_action(const ActionDistribution& dist,
                                             const Action& action) {
  const auto* vec = std::get_if<std::vector<double>>(&action);
  if (vec == nullptr) throw InputError("policy: expected a continuous action");
  if (vec->size() != dist.dim()) throw InputError("policy: action dimension mismatch");
  return *vec;
}

}  // namespace

ActionDistribution ActionDistribution::categorical(std::vector<double> probs) {
  if (probs.empty()) throw InputError("ActionDistribution: empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw NumericError("ActionDistribution: invalid probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw NumericError("ActionDistribution: probabilities sum to " + std::to_string(sum));
  }
  ActionDistribution d;
  d.kind_ = Kind::kCategorical;
  d.probs_ = std::move(probs);
  return d;
}

ActionDistribution ActionDistribution::gaussian(std::vector<double> mean,
                                                std::vector<double> std) {
  if (mean.empty() || mean.size() != std.size()) {
    throw InputError("ActionDistribution: mean/std size mismatch");
  }
  for (double s : std) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw NumericError("ActionDistribution: standard deviation must be positive");
    }
  }
  for (double m : mean) {
    if (!std::isfinite(m)) throw NumericError("ActionDistribution: non-finite mean");
  }
  ActionDistribution d;
  d.kind_ = Kind::kGaussian;
  d.mean_ = std::move(mean);
  d.std_ = std::move(std);
  return d;
}

void ActionDistribution::apply_storage_floor() {
  if (kind_ != Kind::kCategorical) return;
  for (double& p : probs_) p = std::max(p, kSnapshotProbFloor);
}

void PolicySpec::validate() const {
  trunk.validate();
  if (action_dim == 0) throw ConfigError("PolicySpec: action_dim must be positive");
  if (trunk.output_dim() != action_dim) {
    throw ConfigError("PolicySpec: trunk output width must equal action_dim");
  }
}

ActionDistribution policy_distribution(const PolicySpec& spec, const ParamVector& params,
                                       const std::vector<double>& state) {
  spec.validate();
  if (params.size() != spec.param_count()) {
    throw ConfigError("policy_distribution: params length mismatch");
  }
  ParamVector trunk_params(std::vector<double>(params.begin(),
                                               params.begin() + spec.trunk.param_count()));
  const std::vector<double> out = mlp_forward(spec.trunk, trunk_params, state);
  if (spec.head == PolicySpec::Head::kCategorical) {
    return ActionDistribution::categorical(softmax(out));
  }
  std::vector<double> std(spec.action_dim);
  const std::size_t base = spec.trunk.param_count();
  for (std::size_t i = 0; i < spec.action_dim; ++i) {
    std[i] = std::exp(params[base + i]);
    if (!std::isfinite(std[i]) || std[i] <= 0.0) {
      throw NumericError("policy_distribution: non-finite std");
    }
  }
  return ActionDistribution::gaussian(out, std);
}

double log_prob(const ActionDistribution& dist, const Action& action) {
  if (dist.is_categorical()) {
    const int a = discrete_action(dist, action);
    return std::log(dist.probs()[static_cast<std::size_t>(a)]);
  }
  const std::vector<double>& a = continuous_action(dist, action);
  double lp = 0.0;
  for (std::size_t i = 0; i < dist.dim(); ++i) {
    const double z = (a[i] - dist.mean()[i]) / dist.std_dev()[i];
    lp += -std::log(dist.std_dev()[i]) - kHalfLog2Pi - 0.5 * z * z;
  }
  return lp;
}

namespace {

/// Assembles a policy-parameter gradient from the gradient with respect to the
/// trunk output plus (for Gaussian heads) the gradient with respect to the
/// state-independent log-std parameters.
ParamVector assemble_grad(const PolicySpec& spec, const ParamVector& params,
                          const std::vector<double>& state,
                          const std::vector<double>& trunk_output_grad,
                          const std::vector<double>& log_std_grad) {
  ParamVector trunk_params(std::vector<double>(params.begin(),
                                               params.begin() + spec.trunk.param_count()));
  ParamVector trunk_grad = mlp_backward(spec.trunk, trunk_params, state, trunk_output_grad);
  if (spec.head == PolicySpec::Head::kCategorical) return trunk_grad;

  ParamVector grad(spec.param_count());
  for (std::size_t i = 0; i < trunk_grad.size(); ++i) grad[i] = trunk_grad[i];
  const std::size_t base = spec.trunk.param_count();
  for (std::size_t i = 0; i < spec.action_dim; ++i) grad[base + i] = log_std_grad[i];
  return grad;
}

}  // namespace

ParamVector grad_log_prob(const PolicySpec& spec, const ParamVector& params,
                          const std::vector<double>& state, const Action& action) {
  const ActionDistribution dist = policy_distribution(spec, params, state);
  if (dist.is_categorical()) {
    const int a = discrete_action(dist, action);
    std::vector<double> out_grad(dist.action_count());
    for (std::size_t j = 0; j < dist.action_count(); ++j) {
      out_grad[j] = (static_cast<std::size_t>(a) == j ? 1.0 : 0.0) - dist.probs()[j];
    }
    return assemble_grad(spec, params, state, out_grad, {});
  }
  const std::vector<double>& a = continuous_action(dist, action);
  std::vector<double> mean_grad(dist.dim());
  std::vector<double> log_std_grad(dist.dim());
  for (std::size_t i = 0; i < dist.dim(); ++i) {
    const double sigma = dist.std_dev()[i];
    const double z = (a[i] - dist.mean()[i]) / sigma;
    mean_grad[i] = z / sigma;
    log_std_grad[i] = z * z - 1.0;
  }
  return assemble_grad(spec, params, state, mean_grad, log_std_grad);
}

double entropy(const ActionDistribution& dist) {
  if (dist.is_categorical()) {
    double h = 0.0;
    for (double p : dist.probs()) {
      if (p > 0.0) h -= p * std::log(p);
    }
    return h;
  }
  double h = 0.0;
  for (double s : dist.std_dev()) {
    h += 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * s * s);
  }
  return h;
}

ParamVector entropy_gradient(const PolicySpec& spec, const ParamVector& params,
                             const std::vector<double>& state) {
  const ActionDistribution dist = policy_distribution(spec, params, state);
  if (dist.is_categorical()) {
    const double h = entropy(dist);
    std::vector<double> out_grad(dist.action_count());
    for (std::size_t j = 0; j < dist.action_count(); ++j) {
      const double p = dist.probs()[j];
      out_grad[j] = p > 0.0 ? -p * (std::log(p) + h) : 0.0;
    }
    return assemble_grad(spec, params, state, out_grad, {});
  }
  // Gaussian entropy depends only on the log-std parameters; each contributes 1.
  std::vector<double> mean_grad(dist.dim(), 0.0);
  std::vector<double> log_std_grad(dist.dim(), 1.0);
  return assemble_grad(spec, params, state, mean_grad, log_std_grad);
}

double kl_exact(const ActionDistribution& p, const ActionDistribution& q) {
  if (p.kind() != q.kind()) throw InputError("kl_exact: mismatched distribution kinds");
  if (p.is_categorical()) {
    if (p.action_count() != q.action_count()) {
      throw InputError("kl_exact: action-count mismatch");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.action_count(); ++i) {
      const double pi = p.probs()[i];
      if (pi <= 0.0) continue;
      const double qi = q.probs()[i];
      if (qi <= 0.0) throw NumericError("kl_exact: support violation");
      kl += pi * (std::log(pi) - std::log(qi));
    }
    return kl;
  }
  if (p.dim() != q.dim()) throw InputError("kl_exact: dimension mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double sp = p.std_dev()[i];
    const double sq = q.std_dev()[i];
    const double dm = p.mean()[i] - q.mean()[i];
    kl += std::log(sq / sp) + (sp * sp + dm * dm) / (2.0 * sq * sq) - 0.5;
  }
  return kl;
}

double kl_to_behavior(const ActionDistribution& current, const ActionDistribution& behavior,
                      KlDirection direction) {
  return direction == KlDirection::kBehaviorToTarget ? kl_exact(behavior, current)
                                                     : kl_exact(current, behavior);
}

ParamVector grad_kl(const PolicySpec& spec, const ParamVector& params,
                    const std::vector<double>& state, const ActionDistribution& behavior,
                    KlDirection direction) {
  const ActionDistribution dist = policy_distribution(spec, params, state);
  if (dist.kind() != behavior.kind()) throw InputError("grad_kl: mismatched action spaces");

  if (dist.is_categorical()) {
    if (dist.action_count() != behavior.action_count()) {
      throw InputError("grad_kl: action-count mismatch");
    }
    std::vector<double> out_grad(dist.action_count());
    if (direction == KlDirection::kBehaviorToTarget) {
      // d KL(mu || pi) / d logit_j = pi_j - mu_j
      for (std::size_t j = 0; j < dist.action_count(); ++j) {
        out_grad[j] = dist.probs()[j] - behavior.probs()[j];
      }
    } else {
      // d KL(pi || mu) / d logit_j = pi_j * (log(pi_j/mu_j) - KL)
      const double kl = kl_exact(dist, behavior);
      for (std::size_t j = 0; j < dist.action_count(); ++j) {
        const double pj = dist.probs()[j];
        const double mj = behavior.probs()[j];
        if (mj <= 0.0) throw NumericError("grad_kl: support violation");
        out_grad[j] = pj * (std::log(pj / mj) - kl);
      }
    }
    return assemble_grad(spec, params, state, out_grad, {});
  }

  if (dist.dim() != behavior.dim()) throw InputError("grad_kl: dimension mismatch");
  std::vector<double> mean_grad(dist.dim());
  std::vector<double> log_std_grad(dist.dim());
  for (std::size_t i = 0; i < dist.dim(); ++i) {
    const double st = dist.std_dev()[i];    // target (current policy)
    const double sb = behavior.std_dev()[i];
    const double dm = dist.mean()[i] - behavior.mean()[i];
    if (direction == KlDirection::kBehaviorToTarget) {
      // KL(b || t) = log(st/sb) + (sb^2 + dm^2) / (2 st^2) - 1/2
      mean_grad[i] = dm / (st * st);
      log_std_grad[i] = 1.0 - (sb * sb + dm * dm) / (st * st);
    } else {
      // KL(t || b) = log(sb/st) + (st^2 + dm^2) / (2 sb^2) - 1/2
      mean_grad[i] = dm / (sb * sb);
      log_std_grad[i] = st * st / (sb * sb) - 1.0;
    }
  }
  return assemble_grad(spec, params, state, mean_grad, log_std_grad);
}

Action sample(const ActionDistribution& dist, RngStream& rng) {
  if (dist.is_categorical()) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < dist.action_count(); ++i) {
      cumulative += dist.probs()[i];
      if (u < cumulative) return static_cast<int>(i);
    }
    return static_cast<int>(dist.action_count() - 1);
  }
  std::vector<double> a(dist.dim());
  for (std::size_t i = 0; i < dist.dim(); ++i) {
    a[i] = dist.mean()[i] + dist.std_dev()[i] * rng.normal();
  }
  return a;
}

}  // namespace p3o
