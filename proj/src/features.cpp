#include "centrank/features.hpp"

#include <ostream>
#include <string>

#include "centrank/error.hpp"
#include "centrank/io.hpp"

namespace centrank {

CentralityVector second_level_degree(const Graph& g) {
  CentralityVector c{Measure::second_level_degree, std::vector<double>(g.num_vertices())};
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    std::size_t total = g.degree(w);
    for (Vertex u : g.neighbors(w)) total += g.degree(u);
    c.values[w] = static_cast<double>(total);
  }
  return c;
}

std::vector<double> normalized_ranks(const CentralityVector& c) {
  auto r = rank_vertices(c);
  const double n = static_cast<double>(c.size());
  for (double& x : r.ranks) x /= n;
  return std::move(r.ranks);
}

std::vector<Measure> input_measures(int attributes) {
  if (attributes == 2) return {Measure::degree, Measure::eigenvector};
  if (attributes == 3) return {Measure::degree, Measure::eigenvector, Measure::second_level_degree};
  throw UsageError("attribute count must be 2 or 3, got " + std::to_string(attributes));
}

namespace {

void fill_column(RowMatrix& m, Eigen::Index col, const CentralityVector& c) {
  if (static_cast<Eigen::Index>(c.size()) != m.rows())
    throw InputError(std::string(to_string(c.measure)) + " vector does not match the graph size");
  auto ranks = normalized_ranks(c);
  for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, col) = ranks[static_cast<std::size_t>(r)];
}

}  // namespace

RowMatrix build_inputs(const Graph& g, const CentralityVector& degree, const CentralityVector& eigenvector,
                       int attributes) {
  auto measures = input_measures(attributes);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  RowMatrix x(n, static_cast<Eigen::Index>(measures.size()));
  fill_column(x, 0, degree);
  fill_column(x, 1, eigenvector);
  if (attributes == 3) fill_column(x, 2, second_level_degree(g));
  return x;
}

FeatureMatrix build_features(const Graph& g, const ExactCentralities& exact, int attributes,
                             std::span<const Measure> targets) {
  if (targets.empty() || targets.size() > 2) throw UsageError("a feature matrix needs one or two targets");
  FeatureMatrix f;
  f.inputs = input_measures(attributes);
  f.targets.assign(targets.begin(), targets.end());
  f.x = build_inputs(g, exact.degree, exact.eigenvector, attributes);
  f.y.resize(f.x.rows(), static_cast<Eigen::Index>(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t] != Measure::betweenness && targets[t] != Measure::closeness)
      throw UsageError("targets must be betweenness or closeness");
    const auto& values = exact.get(targets[t]);
    if (values.values.empty()) throw InputError("record has no " + std::string(to_string(targets[t])) + " values");
    fill_column(f.y, static_cast<Eigen::Index>(t), values);
  }
  return f;
}

void write_features_csv(const FeatureMatrix& f, std::ostream& out) {
  out << "vertex";
  for (Measure m : f.inputs) out << ',' << to_string(m);
  for (Measure m : f.targets) out << ",target_" << to_string(m);
  out << '\n';
  for (Eigen::Index r = 0; r < f.x.rows(); ++r) {
    out << r;
    for (Eigen::Index c = 0; c < f.x.cols(); ++c) out << ',' << format_double(f.x(r, c));
    for (Eigen::Index c = 0; c < f.y.cols(); ++c) out << ',' << format_double(f.y(r, c));
    out << '\n';
  }
}

}  // namespace centrank
