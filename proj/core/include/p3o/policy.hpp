#ifndef P3O_POLICY_HPP_
#define P3O_POLICY_HPP_

#include <cstddef>
#include <variant>
#include <vector>

#include "p3o/mlp.hpp"
#include "p3o/param_vector.hpp"
#include "p3o/rng.hpp"

namespace p3o {

/// A discrete action index or a continuous action vector.
using Action = std::variant<int, std::vector<double>>;

/// Action distribution at one state: categorical probabilities over a finite
/// action set, or a diagonal Gaussian with per-dimension mean and std.
class ActionDistribution {
 public:
  enum class Kind { kCategorical, kGaussian };

  static ActionDistribution categorical(std::vector<double> probs);
  static ActionDistribution gaussian(std::vector<double> mean, std::vector<double> std);

  Kind kind() const { return kind_; }
  bool is_categorical() const { return kind_ == Kind::kCategorical; }

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& std_dev() const { return std_; }

  std::size_t action_count() const { return probs_.size(); }  // categorical only
  std::size_t dim() const { return mean_.size(); }            // gaussian only

  /// Clamps categorical probabilities away from zero (floor 1e-12). Applied
  /// only to snapshots restored from disk; a live softmax never needs it.
  void apply_storage_floor();

  bool operator==(const ActionDistribution&) const = default;

 private:
  Kind kind_ = Kind::kCategorical;
  std::vector<double> probs_;
  std::vector<double> mean_;
  std::vector<double> std_;
};

/// The behavior policy's distribution recorded at collection time, plus the
/// log-probability of the action that was actually taken.
struct PolicySnapshot {
  ActionDistribution distribution;
  double log_prob_action = 0.0;

  bool operator==(const PolicySnapshot&) const = default;
};

/// Network-backed stochastic policy head.
struct PolicySpec {
  enum class Head { kCategorical, kGaussian };

  MlpSpec trunk;                 // maps observation to logits or to the mean
  Head head = Head::kCategorical;
  std::size_t action_dim = 0;    // |A| for categorical, action dimension for gaussian

  /// Gaussian policies carry state-independent log-std parameters appended
  /// after the trunk weights.
  std::size_t param_count() const {
    return trunk.param_count() + (head == Head::kGaussian ? action_dim : 0);
  }

  void validate() const;

  bool operator==(const PolicySpec&) const = default;
};

/// Which direction the KL penalty is computed in. The default matches the
/// penalty term KL(behavior || target); the reverse form is also available
/// behind configuration.
enum class KlDirection { kBehaviorToTarget, kTargetToBehavior };

ActionDistribution policy_distribution(const PolicySpec& spec, const ParamVector& params,
                                       const std::vector<double>& state);

double log_prob(const ActionDistribution& dist, const Action& action);

/// d log pi(action | state) / d params.
ParamVector grad_log_prob(const PolicySpec& spec, const ParamVector& params,
                          const std::vector<double>& state, const Action& action);

/// Shannon entropy in nats (categorical) or differential entropy (gaussian).
double entropy(const ActionDistribution& dist);

/// d entropy(pi(.|state)) / d params.
ParamVector entropy_gradient(const PolicySpec& spec, const ParamVector& params,
                             const std::vector<double>& state);

/// KL(p || q), exact: full sum over actions or the diagonal-Gaussian closed form.
double kl_exact(const ActionDistribution& p, const ActionDistribution& q);

/// Gradient with respect to params of KL(behavior || pi(.|state)) (default
/// direction) or KL(pi(.|state) || behavior). Exact; no sampling.
ParamVector grad_kl(const PolicySpec& spec, const ParamVector& params,
                    const std::vector<double>& state, const ActionDistribution& behavior,
                    KlDirection direction = KlDirection::kBehaviorToTarget);

/// KL between behavior and the current policy at one state, in the given
/// direction (value counterpart of grad_kl).
double kl_to_behavior(const ActionDistribution& current, const ActionDistribution& behavior,
                      KlDirection direction);

/// Inverse-CDF draw (categorical) or mean + std * standard normal (gaussian).
Action sample(const ActionDistribution& dist, RngStream& rng);

}  // namespace p3o

#endif  // P3O_POLICY_HPP_
