#include <cmath>
#include <random>
#include <string>

#include "backprop.hpp"
#include "centrank/error.hpp"
#include "centrank/neural.hpp"

namespace centrank {

std::string_view to_string(Activation a) { return a == Activation::tanh ? "tanh" : "identity"; }

Activation activation_from_string(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "identity" || name == "linear") return Activation::identity;
  throw InputError("unknown activation '" + std::string(name) + "'");
}

void Mlp::layout() {
  if (sizes_.size() < 2) throw UsageError("a network needs at least an input and an output layer");
  for (std::size_t s : sizes_)
    if (s == 0) throw UsageError("layer sizes must be positive");
  if (activations_.size() != sizes_.size() - 1) throw UsageError("one activation per weight layer is required");
  offsets_.assign(num_layers(), 0);
  std::size_t total = 0;
  for (std::size_t l = 0; l < num_layers(); ++l) {
    offsets_[l] = total;
    total += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
  }
  params_.resize(total, 0.0);
}

Mlp Mlp::init(std::vector<std::size_t> layer_sizes, std::uint64_t seed) {
  Mlp m;
  m.sizes_ = std::move(layer_sizes);
  if (m.sizes_.size() < 2) throw UsageError("a network needs at least an input and an output layer");
  m.activations_.assign(m.sizes_.size() - 1, Activation::tanh);
  m.activations_.back() = Activation::identity;
  m.layout();

  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(m.sizes_[l]));
    std::uniform_real_distribution<double> u(-bound, bound);
    const std::size_t count = m.sizes_[l] * m.sizes_[l + 1];
    for (std::size_t i = 0; i < count; ++i) m.params_[m.offsets_[l] + i] = u(rng);
  }
  return m;
}

Mlp Mlp::from_parameters(std::vector<std::size_t> layer_sizes, std::vector<Activation> activations,
                         std::vector<double> parameters) {
  Mlp m;
  m.sizes_ = std::move(layer_sizes);
  m.activations_ = std::move(activations);
  m.layout();
  m.set_parameters(parameters);
  return m;
}

void Mlp::set_parameters(std::span<const double> p) {
  if (p.size() != params_.size())
    throw InputError("expected " + std::to_string(params_.size()) + " parameters, got " + std::to_string(p.size()));
  std::copy(p.begin(), p.end(), params_.begin());
}

Mlp::ConstWeights Mlp::weights(std::size_t layer) const {
  return {params_.data() + offsets_[layer], static_cast<Eigen::Index>(sizes_[layer + 1]),
          static_cast<Eigen::Index>(sizes_[layer])};
}

Mlp::ConstBias Mlp::bias(std::size_t layer) const {
  return {params_.data() + bias_offset(layer), static_cast<Eigen::Index>(sizes_[layer + 1])};
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  if (x.size() != input_dim())
    throw InputError("input has " + std::to_string(x.size()) + " values, network expects " +
                     std::to_string(input_dim()));
  detail::Backprop pass(*this);
  const auto& out = pass.forward(x.data());
  return {out.data(), out.data() + out.size()};
}

RowMatrix Mlp::forward(const RowMatrix& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim())
    throw InputError("input has " + std::to_string(x.cols()) + " columns, network expects " +
                     std::to_string(input_dim()));
  RowMatrix a = x;
  for (std::size_t l = 0; l < num_layers(); ++l) {
    RowMatrix z = a * weights(l).transpose();
    z.rowwise() += bias(l).transpose();
    if (activations_[l] == Activation::tanh) z = z.unaryExpr([](double v) { return std::tanh(v); });
    a = std::move(z);
  }
  return a;
}

std::vector<std::size_t> default_layer_sizes(std::size_t inputs, std::size_t outputs) {
  return {inputs, 20, 20, 20, outputs};
}

Jacobian jacobian(const Mlp& m, const RowMatrix& x, const RowMatrix& y) {
  const auto samples = x.rows();
  const auto outputs = static_cast<Eigen::Index>(m.output_dim());
  if (static_cast<std::size_t>(x.cols()) != m.input_dim() || y.cols() != outputs || y.rows() != samples)
    throw InputError("batch shape does not match the network");
  const auto params = static_cast<Eigen::Index>(m.parameter_count());

  Jacobian out;
  out.J.resize(samples * outputs, params);
  out.e.resize(samples * outputs);
  detail::Backprop pass(m);
  Eigen::VectorXd grad(params);
  for (Eigen::Index i = 0; i < samples; ++i) {
    Eigen::VectorXd row = x.row(i).transpose();
    const auto& pred = pass.forward(row.data());
    for (Eigen::Index o = 0; o < outputs; ++o) {
      pass.gradient(o, grad.data());
      out.J.row(i * outputs + o) = grad.transpose();
      out.e[i * outputs + o] = pred[o] - y(i, o);
    }
  }
  return out;
}

double sum_squared_error(const Mlp& m, const RowMatrix& x, const RowMatrix& y) {
  if (x.rows() == 0) return 0.0;
  RowMatrix pred = m.forward(x);
  if (pred.rows() != y.rows() || pred.cols() != y.cols()) throw InputError("target shape does not match the network");
  return (pred - y).squaredNorm();
}

}  // namespace centrank
