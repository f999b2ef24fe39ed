#pragma once

// Hot loops behind the public centrality and training APIs. Each kernel has
// an OpenMP version and a serial reference with identical semantics; tests
// compare the two and the benchmark times them.

#include <cstdint>
#include <span>
#include <vector>

#include "centrank/graph.hpp"

namespace centrank::kernels {

struct ShortestPathSums {
  // Sum over sources s of the Brandes dependency delta_s(w), ordered pairs.
  std::vector<double> dependency;
  // Sum over sources s of d(s, w). Integer, so exact in any order.
  std::vector<std::uint64_t> distance;
  // Per source (same order as the input), sum over w of d(s, w).
  std::vector<std::uint64_t> source_distance;
  // Number of vertices each source reached, itself included.
  std::vector<std::size_t> source_reach;
};

/// Parallel over sources with per-worker accumulators merged in worker order.
ShortestPathSums brandes_accumulate(const Graph& g, std::span<const Vertex> sources);

namespace reference {

ShortestPathSums brandes_accumulate(const Graph& g, std::span<const Vertex> sources);

}  // namespace reference

}  // namespace centrank::kernels
