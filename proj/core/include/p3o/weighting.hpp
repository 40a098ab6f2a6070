#ifndef P3O_WEIGHTING_HPP_
#define P3O_WEIGHTING_HPP_

#include <vector>

namespace p3o {

/// Per-transition importance weights, strictly positive.
using WeightVector = std::vector<double>;

/// Importance ratios saturate here before entering telemetry or the ESS;
/// the clipped ratio already bounds the gradient term, so the cap only
/// protects the diagnostics path.
inline constexpr double kRatioCap = 1e6;

/// Adaptive P3O coefficients derived from one mini-batch: lambda = 1 - ESS
/// scales the KL penalty and c = ESS thresholds the importance ratio.
/// lambda + c == 1 exactly.
struct AdaptiveCoefficients {
  double lambda = 0.0;
  double c = 1.0;
  double ess = 1.0;
};

/// exp(target_logprob - behavior_logprob), saturated at kRatioCap. The
/// optional flag reports saturation for telemetry.
double is_ratio(double target_logprob, double behavior_logprob, bool* saturated = nullptr);

/// min(rho, c).
double clip_ratio(double rho, double c);

/// Normalized effective sample size (sum w)^2 / (N * sum w^2), in [1/N, 1].
double ess(const WeightVector& weights);

AdaptiveCoefficients adaptive_coefficients(const WeightVector& weights);

/// Mean of -log(rho) over the batch; a sampled estimate of KL(behavior || target)
/// recorded for telemetry alongside the exact per-state KL.
double sampled_kl_telemetry(const WeightVector& ratios);

}  // namespace p3o

#endif  // P3O_WEIGHTING_HPP_
