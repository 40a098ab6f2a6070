#include "p3o/optimizer.hpp"

#include <cmath>

#include "p3o/error.hpp"

namespace p3o {

namespace {
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEpsilon = 1e-8;
}  // namespace

OptimizerState OptimizerState::create(std::size_t param_count, double learning_rate,
                                      double clip_norm) {
  if (learning_rate <= 0.0) throw ConfigError("OptimizerState: learning_rate must be positive");
  if (clip_norm <= 0.0) throw ConfigError("OptimizerState: clip_norm must be positive");
  OptimizerState s;
  s.first_moment = ParamVector(param_count);
  s.second_moment = ParamVector(param_count);
  s.learning_rate = learning_rate;
  s.clip_norm = clip_norm;
  return s;
}

double clip_global_norm(ParamVector& grad, double clip_norm) {
  const double norm = grad.l2_norm();
  if (norm > clip_norm) grad.scale(clip_norm / norm);
  return norm;
}

void optimizer_apply(OptimizerState& state, ParamVector& params, ParamVector grad) {
  if (grad.size() != params.size() || state.first_moment.size() != params.size()) {
    throw InputError("optimizer_apply: length mismatch");
  }
  if (!grad.all_finite()) {
    throw NumericError("optimizer_apply: non-finite gradient");
  }

  clip_global_norm(grad, state.clip_norm);

  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(kBeta1, t);
  const double bc2 = 1.0 - std::pow(kBeta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    const double m = kBeta1 * state.first_moment[i] + (1.0 - kBeta1) * g;
    const double v = kBeta2 * state.second_moment[i] + (1.0 - kBeta2) * g * g;
    state.first_moment[i] = m;
    state.second_moment[i] = v;
    const double m_hat = m / bc1;
    const double v_hat = v / bc2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + kEpsilon);
  }
}

}  // namespace p3o
