#include "centrank/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "centrank/error.hpp"
#include "centrank/kernels.hpp"

namespace centrank {

SamplePlan make_plan(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw UsageError("sample fraction must lie in (0, 1], got " + std::to_string(fraction));
  if (n == 0) throw InputError("cannot sample pivots from an empty graph");

  const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))),
                                         1, n);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(perm[i], perm[pick(rng)]);
  }
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return SamplePlan{fraction, seed, std::move(perm)};
}

PathCentralities approximate_centralities(const Graph& g, const SamplePlan& plan) {
  const std::size_t n = g.num_vertices();
  if (plan.pivots.empty()) throw UsageError("sample plan has no pivots");
  for (Vertex p : plan.pivots)
    if (p >= n) throw UsageError("sample plan does not match the graph");

  auto sums = kernels::brandes_accumulate(g, plan.pivots);
  for (std::size_t reach : sums.source_reach)
    if (reach != n) throw InputError("graph is disconnected; extract the largest connected component first");

  const double scale = static_cast<double>(n) / static_cast<double>(plan.pivots.size());
  PathCentralities out{{Measure::betweenness, std::vector<double>(n)},
                       {Measure::closeness, std::vector<double>(n)}};
  for (Vertex w = 0; w < n; ++w) {
    out.betweenness.values[w] = scale * 0.5 * sums.dependency[w];
    const double estimate = scale * static_cast<double>(sums.distance[w]);
    out.closeness.values[w] = estimate > 0 ? 1.0 / estimate : 0.0;
  }
  for (std::size_t i = 0; i < plan.pivots.size(); ++i) {
    const auto total = sums.source_distance[i];
    out.closeness.values[plan.pivots[i]] = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
  }
  return out;
}

}  // namespace centrank
