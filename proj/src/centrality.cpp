#include "centrank/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "centrank/error.hpp"
#include "centrank/kernels.hpp"

namespace centrank {

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::degree: return "degree";
    case Measure::eigenvector: return "eigenvector";
    case Measure::betweenness: return "betweenness";
    case Measure::closeness: return "closeness";
    case Measure::second_level_degree: return "second_level_degree";
  }
  return "unknown";
}

Measure measure_from_string(std::string_view name) {
  for (Measure m : {Measure::degree, Measure::eigenvector, Measure::betweenness, Measure::closeness,
                    Measure::second_level_degree})
    if (to_string(m) == name) return m;
  throw InputError("unknown centrality measure '" + std::string(name) + "'");
}

CentralityVector degree_centrality(const Graph& g) {
  CentralityVector c{Measure::degree, std::vector<double>(g.num_vertices())};
  for (Vertex v = 0; v < g.num_vertices(); ++v) c.values[v] = static_cast<double>(g.degree(v));
  return c;
}

EigenvectorResult eigenvector_centrality(const Graph& g, const EigenvectorOptions& options) {
  if (!(options.tolerance > 0)) throw UsageError("eigenvector tolerance must be positive");
  if (options.max_iterations < 1) throw UsageError("eigenvector max_iterations must be at least 1");
  const std::size_t n = g.num_vertices();
  EigenvectorResult result;
  result.centrality.measure = Measure::eigenvector;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  std::vector<double> current(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    double total = 0.0;
    for (Vertex w = 0; w < n; ++w) {
      double sum = options.shift ? current[w] : 0.0;
      for (Vertex i : g.neighbors(w)) sum += current[i];
      next[w] = sum;
      total += sum;
    }
    if (!(total > 0)) throw NumericalError("eigenvector iteration collapsed to zero (graph has no edges)");
    double change = 0.0;
    for (Vertex w = 0; w < n; ++w) {
      next[w] /= total;
      change += std::abs(next[w] - current[w]);
    }
    current.swap(next);
    result.iterations = it;
    result.last_change = change;
    if (change < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.centrality.values = std::move(current);
  return result;
}

PathCentralities betweenness_closeness_exact(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InputError("graph is empty");
  if (!is_connected(g))
    throw InputError("graph is disconnected; extract the largest connected component first");

  std::vector<Vertex> sources(n);
  std::iota(sources.begin(), sources.end(), Vertex{0});
  auto sums = kernels::brandes_accumulate(g, sources);

  PathCentralities out{{Measure::betweenness, std::vector<double>(n)},
                       {Measure::closeness, std::vector<double>(n)}};
  for (Vertex w = 0; w < n; ++w) {
    out.betweenness.values[w] = 0.5 * sums.dependency[w];
    out.closeness.values[w] = sums.distance[w] > 0 ? 1.0 / static_cast<double>(sums.distance[w]) : 0.0;
  }
  return out;
}

const CentralityVector& ExactCentralities::get(Measure m) const {
  switch (m) {
    case Measure::degree: return degree;
    case Measure::eigenvector: return eigenvector;
    case Measure::betweenness: return betweenness;
    case Measure::closeness: return closeness;
    default: break;
  }
  throw InputError("no exact values stored for measure '" + std::string(to_string(m)) + "'");
}

ExactCentralities compute_exact_centralities(const Graph& g, const EigenvectorOptions& eigen) {
  ExactCentralities out;
  out.degree = degree_centrality(g);
  auto ev = eigenvector_centrality(g, eigen);
  out.eigenvector = std::move(ev.centrality);
  out.eigenvector_converged = ev.converged;
  auto paths = betweenness_closeness_exact(g);
  out.betweenness = std::move(paths.betweenness);
  out.closeness = std::move(paths.closeness);
  return out;
}

RankVector rank_vertices(std::span<const double> scores, bool higher_is_better) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_is_better ? scores[a] > scores[b] : scores[a] < scores[b];
  });

  RankVector r{std::vector<double>(n)};
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double mean = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) r.ranks[order[t]] = mean;
    i = j;
  }
  return r;
}

}  // namespace centrank
