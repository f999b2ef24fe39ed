#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "centrank/centrality.hpp"
#include "centrank/graph.hpp"

namespace centrank {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// deg(w) plus the degrees of w's neighbors.
CentralityVector second_level_degree(const Graph& g);

/// rank / n with rank 1 the most central, so values lie in (0, 1] and a
/// column sums to (n + 1) / 2.
std::vector<double> normalized_ranks(const CentralityVector& c);

/// One row per vertex. Input columns are [degree, eigenvector] or
/// [degree, eigenvector, second_level_degree]; target columns follow the
/// order given.
struct FeatureMatrix {
  std::vector<Measure> inputs;
  std::vector<Measure> targets;
  RowMatrix x;
  RowMatrix y;

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
};

std::vector<Measure> input_measures(int attributes);

/// Input block only; used at prediction time when no targets exist.
RowMatrix build_inputs(const Graph& g, const CentralityVector& degree, const CentralityVector& eigenvector,
                       int attributes);

FeatureMatrix build_features(const Graph& g, const ExactCentralities& exact, int attributes,
                             std::span<const Measure> targets);

void write_features_csv(const FeatureMatrix& f, std::ostream& out);

}  // namespace centrank
