#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "centrank/centrality.hpp"
#include "centrank/features.hpp"
#include "centrank/graph.hpp"

namespace centrank {

enum class Activation { tanh, identity };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

/// Fully connected perceptron. Parameters live in one flat vector, layer by
/// layer: the weight matrix (outputs x inputs, row-major) followed by the
/// bias vector.
class Mlp {
 public:
  Mlp() = default;

  /// Hidden layers tanh, output layer identity. Weights uniform in
  /// [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
  static Mlp init(std::vector<std::size_t> layer_sizes, std::uint64_t seed);

  static Mlp from_parameters(std::vector<std::size_t> layer_sizes, std::vector<Activation> activations,
                             std::vector<double> parameters);

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  const std::vector<Activation>& activations() const { return activations_; }
  std::size_t num_layers() const { return activations_.size(); }
  std::size_t input_dim() const { return sizes_.front(); }
  std::size_t output_dim() const { return sizes_.back(); }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<const double> parameters() const { return params_; }
  void set_parameters(std::span<const double> p);

  using ConstWeights = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstBias = Eigen::Map<const Eigen::VectorXd>;
  ConstWeights weights(std::size_t layer) const;
  ConstBias bias(std::size_t layer) const;
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const { return offsets_[layer] + sizes_[layer] * sizes_[layer + 1]; }

  std::vector<double> forward(std::span<const double> x) const;
  /// Row-wise forward pass over a batch.
  RowMatrix forward(const RowMatrix& x) const;

 private:
  void layout();

  std::vector<std::size_t> sizes_;
  std::vector<Activation> activations_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

/// Default 3 x 20 tanh hidden layers.
std::vector<std::size_t> default_layer_sizes(std::size_t inputs, std::size_t outputs);

/// Residual Jacobian. Rows are sample-major (row = sample * outputs + output),
/// residual = prediction - target.
struct Jacobian {
  Eigen::MatrixXd J;
  Eigen::VectorXd e;
};

Jacobian jacobian(const Mlp& m, const RowMatrix& x, const RowMatrix& y);

/// Gauss-Newton pieces for a batch: J^T J (lower triangle filled), J^T e and
/// the sum of squared residuals.
struct NormalEquations {
  Eigen::MatrixXd jtj;
  Eigen::VectorXd jte;
  double sse = 0.0;
};

namespace kernels {

/// Parallel over fixed blocks of samples with per-worker accumulators.
NormalEquations normal_equations(const Mlp& m, const RowMatrix& x, const RowMatrix& y);

namespace reference {

/// Builds the full Jacobian and multiplies it out.
NormalEquations normal_equations(const Mlp& m, const RowMatrix& x, const RowMatrix& y);

}  // namespace reference

}  // namespace kernels

double sum_squared_error(const Mlp& m, const RowMatrix& x, const RowMatrix& y);

struct LmConfig {
  double mu_init = 1e-3;
  double mu_decrease = 0.1;
  double mu_increase = 10.0;
  double mu_max = 1e10;
  std::size_t max_epochs = 1000;
  std::size_t patience = 10;
  std::size_t max_retries = 50;
  double val_fraction = 0.15;
  double test_fraction = 0.10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Dataset {
  RowMatrix x;
  RowMatrix y;

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  Dataset subset(std::span<const std::size_t> rows) const;
};

struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Seeded shuffle, then test and validation slices off the front.
DataSplit split_rows(std::size_t rows, const LmConfig& cfg);
/// Same proportions, but whole groups (e.g. networks) go to one side.
DataSplit split_groups(std::span<const std::size_t> group_of_row, const LmConfig& cfg);

struct EpochRecord {
  std::size_t epoch = 0;
  double mu = 0.0;
  double train_sse = 0.0;
  double val_sse = 0.0;  // NaN without a validation set
};

struct TrainingHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  std::string stop_reason;
};

struct TrainResult {
  Mlp model;
  TrainingHistory history;
};

/// Batch Levenberg-Marquardt: solve (J^T J + mu I) d = -J^T e, accept when
/// the training error drops. Stops after `patience` accepted epochs without
/// validation improvement and returns the best-validation parameters.
TrainResult train_lm(Mlp model, const Dataset& train, const Dataset& validation, const LmConfig& cfg);

void write_history_csv(const TrainingHistory& h, const std::filesystem::path& path);

}  // namespace centrank
