#ifndef P3O_MLP_HPP_
#define P3O_MLP_HPP_

#include <cstddef>
#include <vector>

#include "p3o/param_vector.hpp"
#include "p3o/rng.hpp"

namespace p3o {

enum class Activation { kTanh, kRelu };

/// Shape of a small fully-connected network. layer_sizes holds the input
/// width followed by each layer's output width; hidden layers apply the
/// matching activation, the final layer is linear.
struct MlpSpec {
  std::vector<std::size_t> layer_sizes;
  std::vector<Activation> activations;  // one per hidden layer

  MlpSpec() = default;
  MlpSpec(std::vector<std::size_t> sizes, Activation hidden_activation);

  std::size_t num_layers() const { return layer_sizes.size() - 1; }
  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }

  /// Total parameter count: per layer a row-major weight matrix then a bias.
  std::size_t param_count() const;

  void validate() const;

  bool operator==(const MlpSpec&) const = default;
};

/// Deterministic forward pass. Throws ConfigError on shape mismatch,
/// NumericError if the output is non-finite for a finite input.
std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                const std::vector<double>& input);

/// Gradient of output_grad . output with respect to params.
ParamVector mlp_backward(const MlpSpec& spec, const ParamVector& params,
                         const std::vector<double>& input,
                         const std::vector<double>& output_grad);

/// Scaled-uniform fan-based init. Weights are drawn uniformly from
/// [-g*sqrt(6/(fan_in+fan_out)), +g*..] with g = gain (final layer uses
/// output_gain), biases start at zero. A small output gain keeps the initial
/// policy near-uniform, which puts the early ESS near 1.
ParamVector mlp_init(const MlpSpec& spec, RngStream& rng, double gain = 1.0,
                     double output_gain = 1.0);

}  // namespace p3o

#endif  // P3O_MLP_HPP_
