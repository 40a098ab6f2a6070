#include "p3o/weighting.hpp"

#include <cmath>

#include "p3o/error.hpp"

namespace p3o {

double is_ratio(double target_logprob, double behavior_logprob, bool* saturated) {
  if (!std::isfinite(target_logprob) || !std::isfinite(behavior_logprob)) {
    throw InputError("is_ratio: non-finite log-probability");
  }
  const double rho = std::exp(target_logprob - behavior_logprob);
  if (rho > kRatioCap) {
    if (saturated != nullptr) *saturated = true;
    return kRatioCap;
  }
  if (saturated != nullptr) *saturated = false;
  return rho;
}

double clip_ratio(double rho, double c) {
  if (!(rho > 0.0)) throw InputError("clip_ratio: rho must be positive");
  if (!(c > 0.0)) throw InputError("clip_ratio: c must be positive");
  return rho < c ? rho : c;
}

double ess(const WeightVector& weights) {
  if (weights.empty()) throw InputError("ess: empty weight vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("ess: weights must be positive and finite");
    sum += w;
    sum_sq += w * w;
  }
  return (sum * sum) / (static_cast<double>(weights.size()) * sum_sq);
}

AdaptiveCoefficients adaptive_coefficients(const WeightVector& weights) {
  AdaptiveCoefficients out;
  out.ess = ess(weights);
  out.lambda = 1.0 - out.ess;
  out.c = out.ess;
  return out;
}

double sampled_kl_telemetry(const WeightVector& ratios) {
  if (ratios.empty()) throw InputError("sampled_kl_telemetry: empty batch");
  double acc = 0.0;
  for (double r : ratios) acc += -std::log(r);
  return acc / static_cast<double>(ratios.size());
}

}  // namespace p3o
