// Textbook single-threaded Brandes with explicit predecessor lists, kept as
// the reference the OpenMP kernel is checked and benchmarked against.

#include <cstdint>
#include <queue>
#include <stack>
#include <vector>

#include "centrank/kernels.hpp"

namespace centrank::kernels::reference {

ShortestPathSums brandes_accumulate(const Graph& g, std::span<const Vertex> sources) {
  const std::size_t n = g.num_vertices();
  ShortestPathSums sums;
  sums.dependency.assign(n, 0.0);
  sums.distance.assign(n, 0);
  sums.source_distance.assign(sources.size(), 0);
  sums.source_reach.assign(sources.size(), 0);

  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Vertex s = sources[i];
    std::vector<std::vector<Vertex>> predecessors(n);
    std::vector<double> sigma(n, 0.0);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<double> delta(n, 0.0);
    std::stack<Vertex> visited;
    std::queue<Vertex> frontier;

    sigma[s] = 1.0;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      visited.push(v);
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          predecessors[w].push_back(v);
        }
      }
    }

    sums.source_reach[i] = visited.size();
    while (!visited.empty()) {
      Vertex w = visited.top();
      visited.pop();
      for (Vertex v : predecessors[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) {
        sums.dependency[w] += delta[w];
        sums.distance[w] += static_cast<std::uint64_t>(dist[w]);
        sums.source_distance[i] += static_cast<std::uint64_t>(dist[w]);
      }
    }
  }
  return sums;
}

}  // namespace centrank::kernels::reference
