#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "centrank/graph.hpp"

namespace centrank {

enum class Measure { degree, eigenvector, betweenness, closeness, second_level_degree };

std::string_view to_string(Measure m);
Measure measure_from_string(std::string_view name);

struct CentralityVector {
  Measure measure = Measure::degree;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Fractional ranks, 1 = most central; ties share the mean of their span.
struct RankVector {
  std::vector<double> ranks;

  std::size_t size() const { return ranks.size(); }
};

CentralityVector degree_centrality(const Graph& g);

struct EigenvectorOptions {
  double tolerance = 1e-10;  // on the L1 change between iterates
  std::size_t max_iterations = 1000;
  bool shift = false;        // iterate with A + I
};

struct EigenvectorResult {
  CentralityVector centrality;
  std::size_t iterations = 0;
  bool converged = false;
  double last_change = 0.0;
};

/// Power method from the all-ones vector with L1 normalization each step.
/// Non-convergence (e.g. bipartite oscillation) is reported, not thrown.
EigenvectorResult eigenvector_centrality(const Graph& g, const EigenvectorOptions& options = {});

struct PathCentralities {
  CentralityVector betweenness;
  CentralityVector closeness;
};

/// Brandes accumulation over every source in one pass: betweenness over
/// unordered pairs with endpoints excluded, and closeness as the reciprocal
/// of the distance sum. Throws InputError on a disconnected graph.
PathCentralities betweenness_closeness_exact(const Graph& g);

/// The four exact measures of one graph.
struct ExactCentralities {
  CentralityVector degree{Measure::degree, {}};
  CentralityVector eigenvector{Measure::eigenvector, {}};
  CentralityVector betweenness{Measure::betweenness, {}};
  CentralityVector closeness{Measure::closeness, {}};
  bool eigenvector_converged = true;

  const CentralityVector& get(Measure m) const;
};

/// Degree, eigenvector and the merged betweenness/closeness pass.
ExactCentralities compute_exact_centralities(const Graph& g, const EigenvectorOptions& eigen = {});

/// Higher score is better unless `higher_is_better` is false.
RankVector rank_vertices(std::span<const double> scores, bool higher_is_better = true);
inline RankVector rank_vertices(const CentralityVector& c) { return rank_vertices(c.values); }

}  // namespace centrank
