#include "p3o/mlp.hpp"

#include <cmath>
#include <string>

#include "p3o/error.hpp"

namespace p3o {

MlpSpec::MlpSpec(std::vector<std::size_t> sizes, Activation hidden_activation)
    : layer_sizes(std::move(sizes)) {
  if (layer_sizes.size() >= 2) {
    activations.assign(layer_sizes.size() - 2, hidden_activation);
  }
  validate();
}

std::size_t MlpSpec::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    n += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return n;
}

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2) {
    throw ConfigError("MlpSpec: need at least one layer (input and output width)");
  }
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw ConfigError("MlpSpec: zero layer width");
  }
  if (activations.size() != layer_sizes.size() - 2) {
    throw ConfigError("MlpSpec: expected one activation per hidden layer");
  }
}

namespace {

double apply_activation(Activation a, double x) {
  switch (a) {
    case Activation::kTanh:
      return std::tanh(x);
    case Activation::kRelu:
      return x > 0.0 ? x : 0.0;
  }
  return x;
}

double activation_grad_from_output(Activation a, double y) {
  switch (a) {
    case Activation::kTanh:
      return 1.0 - y * y;
    case Activation::kRelu:
      return y > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

void check_shapes(const MlpSpec& spec, const ParamVector& params,
                  const std::vector<double>& input) {
  spec.validate();
  if (input.size() != spec.input_dim()) {
    throw ConfigError("mlp: input length " + std::to_string(input.size()) +
                      " does not match spec input width " + std::to_string(spec.input_dim()));
  }
  if (params.size() != spec.param_count()) {
    throw ConfigError("mlp: params length " + std::to_string(params.size()) +
                      " does not match spec parameter count " +
                      std::to_string(spec.param_count()));
  }
}

/// Runs the forward pass storing post-activation values per layer.
/// acts[0] is the input, acts[l+1] the output of layer l.
std::vector<std::vector<double>> forward_storing(const MlpSpec& spec,
                                                 const ParamVector& params,
                                                 const std::vector<double>& input) {
  std::vector<std::vector<double>> acts;
  acts.reserve(spec.num_layers() + 1);
  acts.push_back(input);
  std::size_t offset = 0;
  for (std::size_t l = 0; l < spec.num_layers(); ++l) {
    const std::size_t n_in = spec.layer_sizes[l];
    const std::size_t n_out = spec.layer_sizes[l + 1];
    const double* w = params.data() + offset;
    const double* b = params.data() + offset + n_in * n_out;
    const std::vector<double>& h = acts.back();
    std::vector<double> z(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
      double s = b[i];
      const double* row = w + i * n_in;
      for (std::size_t j = 0; j < n_in; ++j) s += row[j] * h[j];
      z[i] = s;
    }
    const bool hidden = l + 1 < spec.num_layers();
    if (hidden) {
      for (double& v : z) v = apply_activation(spec.activations[l], v);
    }
    acts.push_back(std::move(z));
    offset += n_in * n_out + n_out;
  }
  return acts;
}

}  // namespace

std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                const std::vector<double>& input) {
  check_shapes(spec, params, input);
  auto acts = forward_storing(spec, params, input);
  for (double v : acts.back()) {
    if (!std::isfinite(v)) throw NumericError("mlp_forward: non-finite output");
  }
  return std::move(acts.back());
}

ParamVector mlp_backward(const MlpSpec& spec, const ParamVector& params,
                         const std::vector<double>& input,
                         const std::vector<double>& output_grad) {
  check_shapes(spec, params, input);
  if (output_grad.size() != spec.output_dim()) {
    throw ConfigError("mlp_backward: output_grad length does not match spec output width");
  }
  const auto acts = forward_storing(spec, params, input);

  ParamVector grad(params.size());
  std::vector<double> delta = output_grad;  // d(objective)/d(layer output)
  std::size_t offset = params.size();
  for (std::size_t lp1 = spec.num_layers(); lp1 >= 1; --lp1) {
    const std::size_t l = lp1 - 1;
    const std::size_t n_in = spec.layer_sizes[l];
    const std::size_t n_out = spec.layer_sizes[l + 1];
    offset -= n_in * n_out + n_out;
    const double* w = params.data() + offset;
    double* gw = grad.data() + offset;
    double* gb = grad.data() + offset + n_in * n_out;
    const std::vector<double>& h_in = acts[l];
    const std::vector<double>& h_out = acts[l + 1];

    const bool hidden = l + 1 < spec.num_layers();
    if (hidden) {
      for (std::size_t i = 0; i < n_out; ++i) {
        delta[i] *= activation_grad_from_output(spec.activations[l], h_out[i]);
      }
    }
    for (std::size_t i = 0; i < n_out; ++i) {
      double* grow = gw + i * n_in;
      for (std::size_t j = 0; j < n_in; ++j) grow[j] = delta[i] * h_in[j];
      gb[i] = delta[i];
    }
    if (l > 0) {
      std::vector<double> prev(n_in, 0.0);
      for (std::size_t i = 0; i < n_out; ++i) {
        const double* row = w + i * n_in;
        for (std::size_t j = 0; j < n_in; ++j) prev[j] += delta[i] * row[j];
      }
      delta = std::move(prev);
    }
  }
  return grad;
}

ParamVector mlp_init(const MlpSpec& spec, RngStream& rng, double gain, double output_gain) {
  spec.validate();
  ParamVector params(spec.param_count());
  std::size_t offset = 0;
  for (std::size_t l = 0; l < spec.num_layers(); ++l) {
    const std::size_t n_in = spec.layer_sizes[l];
    const std::size_t n_out = spec.layer_sizes[l + 1];
    const double g = (l + 1 == spec.num_layers()) ? output_gain : gain;
    const double limit = g * std::sqrt(6.0 / static_cast<double>(n_in + n_out));
    for (std::size_t i = 0; i < n_in * n_out; ++i) {
      params[offset + i] = rng.uniform(-limit, limit);
    }
    offset += n_in * n_out + n_out;  // biases stay zero
  }
  return params;
}

}  // namespace p3o
