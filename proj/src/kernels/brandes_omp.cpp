#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "centrank/kernels.hpp"
#include "centrank/parallel.hpp"

namespace centrank::kernels {

namespace {

// Scratch buffers for one single-source pass, reused across sources.
struct Workspace {
  explicit Workspace(std::size_t n) : level(n, -1), sigma(n, 0.0), delta(n, 0.0) { order.reserve(n); }

  std::vector<std::int32_t> level;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<Vertex> order;
};

struct SourceTotals {
  std::uint64_t distance = 0;
  std::size_t reach = 0;
};

SourceTotals single_source(const Graph& g, Vertex s, Workspace& ws, std::span<double> dependency,
                           std::span<std::uint64_t> distance) {
  auto& level = ws.level;
  auto& sigma = ws.sigma;
  auto& delta = ws.delta;
  auto& order = ws.order;

  order.clear();
  order.push_back(s);
  level[s] = 0;
  sigma[s] = 1.0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    const std::int32_t next = level[u] + 1;
    for (Vertex v : g.neighbors(u)) {
      if (level[v] < 0) {
        level[v] = next;
        order.push_back(v);
      }
      if (level[v] == next) sigma[v] += sigma[u];
    }
  }

  SourceTotals totals;
  totals.reach = order.size();
  for (std::size_t i = order.size(); i-- > 1;) {
    const Vertex w = order[i];
    const std::int32_t prev = level[w] - 1;
    for (Vertex v : g.neighbors(w))
      if (level[v] == prev) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    dependency[w] += delta[w];
    distance[w] += static_cast<std::uint64_t>(level[w]);
    totals.distance += static_cast<std::uint64_t>(level[w]);
  }

  for (Vertex v : order) {
    level[v] = -1;
    sigma[v] = 0.0;
    delta[v] = 0.0;
  }
  return totals;
}

}  // namespace

ShortestPathSums brandes_accumulate(const Graph& g, std::span<const Vertex> sources) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = sources.size();
  ShortestPathSums sums;
  sums.dependency.assign(n, 0.0);
  sums.distance.assign(n, 0);
  sums.source_distance.assign(k, 0);
  sums.source_reach.assign(k, 0);

  const std::size_t workers = std::max<std::size_t>(1, std::min(thread_count(), k));
  std::vector<std::vector<double>> dependency(workers);
  std::vector<std::vector<std::uint64_t>> distance(workers);

#pragma omp parallel num_threads(static_cast<int>(workers))
  {
#ifdef _OPENMP
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t tid = 0;
#endif
    Workspace ws(n);
    std::vector<double> local_dependency(n, 0.0);
    std::vector<std::uint64_t> local_distance(n, 0);

#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(k); ++i) {
      auto totals = single_source(g, sources[static_cast<std::size_t>(i)], ws, local_dependency, local_distance);
      sums.source_distance[static_cast<std::size_t>(i)] = totals.distance;
      sums.source_reach[static_cast<std::size_t>(i)] = totals.reach;
    }

    dependency[tid] = std::move(local_dependency);
    distance[tid] = std::move(local_distance);
  }

  // Fixed merge order keeps results reproducible for a given worker count.
  for (std::size_t t = 0; t < workers; ++t) {
    if (dependency[t].empty()) continue;
    for (std::size_t v = 0; v < n; ++v) {
      sums.dependency[v] += dependency[t][v];
      sums.distance[v] += distance[t][v];
    }
  }
  return sums;
}

}  // namespace centrank::kernels
