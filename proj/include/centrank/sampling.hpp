#pragma once

#include <cstdint>
#include <vector>

#include "centrank/centrality.hpp"
#include "centrank/graph.hpp"

namespace centrank {

/// Pivot set for the sampled estimators.
struct SamplePlan {
  double fraction = 1.0;
  std::uint64_t seed = 0;
  std::vector<Vertex> pivots;  // sorted, distinct
};

/// max(1, round(fraction * n)) pivots drawn uniformly without replacement.
/// The draw is a prefix of one seeded permutation, so a larger fraction with
/// the same seed extends a smaller one.
SamplePlan make_plan(std::size_t n, double fraction, std::uint64_t seed);
inline SamplePlan make_plan(const Graph& g, double fraction, std::uint64_t seed) {
  return make_plan(g.num_vertices(), fraction, seed);
}

/// Scaled estimates from one shortest-path tree per pivot:
///   betweenness[w] = (n/k) * 1/2 * sum_s delta_s(w)
///   closeness[w]   = 1 / ((n/k) * sum_s d(s, w)), exact for pivots.
/// With every vertex as a pivot both equal the exact values.
PathCentralities approximate_centralities(const Graph& g, const SamplePlan& plan);

}  // namespace centrank
