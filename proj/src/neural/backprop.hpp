#pragma once

// Single-sample forward/backward pass shared by the Jacobian routines.

#include <vector>

#include <Eigen/Dense>

#include "centrank/neural.hpp"

namespace centrank::detail {

inline double activate(Activation a, double z) { return a == Activation::tanh ? std::tanh(z) : z; }

// Derivative expressed through the activation's output value.
inline double activate_slope(Activation a, double out) { return a == Activation::tanh ? 1.0 - out * out : 1.0; }

class Backprop {
 public:
  explicit Backprop(const Mlp& m) : model_(m), values_(m.num_layers() + 1), delta_(m.num_layers() + 1) {
    const auto& sizes = m.layer_sizes();
    for (std::size_t l = 0; l < sizes.size(); ++l) {
      values_[l].resize(static_cast<Eigen::Index>(sizes[l]));
      delta_[l].resize(static_cast<Eigen::Index>(sizes[l]));
    }
  }

  // Forward pass; returns the output layer.
  const Eigen::VectorXd& forward(const double* x) {
    values_[0] = Eigen::Map<const Eigen::VectorXd>(x, values_[0].size());
    for (std::size_t l = 0; l < model_.num_layers(); ++l) {
      values_[l + 1].noalias() = model_.weights(l) * values_[l];
      values_[l + 1] += model_.bias(l);
      const Activation act = model_.activations()[l];
      for (Eigen::Index i = 0; i < values_[l + 1].size(); ++i) values_[l + 1][i] = activate(act, values_[l + 1][i]);
    }
    return values_.back();
  }

  // Gradient of output `o` w.r.t. every parameter, written to `grad`
  // (length = parameter count). Requires a preceding forward().
  void gradient(Eigen::Index o, double* grad) {
    const std::size_t layers = model_.num_layers();
    auto& top = delta_[layers];
    top.setZero();
    top[o] = activate_slope(model_.activations()[layers - 1], values_[layers][o]);

    for (std::size_t l = layers; l-- > 0;) {
      const auto& d = delta_[l + 1];
      const auto& a = values_[l];
      const Eigen::Index outs = d.size();
      const Eigen::Index ins = a.size();
      double* w = grad + model_.weight_offset(l);
      for (Eigen::Index r = 0; r < outs; ++r)
        for (Eigen::Index c = 0; c < ins; ++c) w[r * ins + c] = d[r] * a[c];
      double* b = grad + model_.bias_offset(l);
      for (Eigen::Index r = 0; r < outs; ++r) b[r] = d[r];
      if (l > 0) {
        delta_[l].noalias() = model_.weights(l).transpose() * d;
        const Activation act = model_.activations()[l - 1];
        for (Eigen::Index i = 0; i < ins; ++i) delta_[l][i] *= activate_slope(act, a[i]);
      }
    }
  }

 private:
  const Mlp& model_;
  std::vector<Eigen::VectorXd> values_;
  std::vector<Eigen::VectorXd> delta_;
};

}  // namespace centrank::detail
