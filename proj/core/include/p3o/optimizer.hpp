#ifndef P3O_OPTIMIZER_HPP_
#define P3O_OPTIMIZER_HPP_

#include <cstdint>

#include "p3o/param_vector.hpp"

namespace p3o {

/// State of the adaptive per-parameter update rule (first/second moment
/// estimates, decay 0.9 / 0.999, epsilon 1e-8) with global-norm gradient
/// clipping applied before the moments are touched.
struct OptimizerState {
  ParamVector first_moment;
  ParamVector second_moment;
  std::uint64_t step_count = 0;
  double learning_rate = 7e-4;
  double clip_norm = 0.5;

  static OptimizerState create(std::size_t param_count, double learning_rate,
                               double clip_norm);
};

/// Scales grad in place so its Euclidean norm is at most clip_norm.
/// Returns the pre-clip norm.
double clip_global_norm(ParamVector& grad, double clip_norm);

/// One descent step on params, in place. grad is the gradient of the loss
/// being minimized. Throws NumericError (leaving params and state untouched)
/// if grad has non-finite entries.
void optimizer_apply(OptimizerState& state, ParamVector& params, ParamVector grad);

}  // namespace p3o

#endif  // P3O_OPTIMIZER_HPP_
