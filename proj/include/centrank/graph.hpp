#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace centrank {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending, contain no self-loops and no
/// duplicates, and are symmetric. Vertex ids are dense in [0, n).
class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph on `n` vertices. Self-loops are dropped and
  /// duplicate edges (in either orientation) collapsed.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edge_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[v] is the id token that became vertex v.
  std::vector<std::int64_t> original_ids;
  LoadStats stats;
};

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments. Ids are remapped to 0..n-1 in order of first appearance.
/// Throws InputError on malformed lines or empty input.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Writes one `u v` line per edge. When the vertex numbering allows it the
/// lines are ordered so that reloading reproduces the same ids.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> new_to_old;
  // kNoVertex for vertices outside the subgraph.
  std::vector<Vertex> old_to_new;
};

/// Induced subgraph on `keep` (any order); vertices are relabeled in
/// ascending order of their old ids.
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

/// Per-vertex component label, labels numbered by smallest member id.
std::vector<Vertex> component_labels(const Graph& g);
bool is_connected(const Graph& g);

/// Largest component; ties go to the component containing the smallest id.
Subgraph largest_connected_component(const Graph& g);

/// Number of vertices per degree, degree-0 vertices excluded.
struct DegreeHistogram {
  std::map<std::size_t, std::size_t> counts;

  std::size_t vertex_count() const;
  std::size_t degree_sum() const;
  std::size_t max_degree() const { return counts.empty() ? 0 : counts.rbegin()->first; }
  /// Degrees expanded one entry per vertex, ascending.
  std::vector<std::size_t> degree_sequence() const;

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;
};

DegreeHistogram degree_histogram(const Graph& g);

/// Total-variation distance between the normalized histograms.
double total_variation(const DegreeHistogram& a, const DegreeHistogram& b);

std::vector<std::size_t> triangle_counts(const Graph& g);

/// Local clustering per vertex; vertices of degree < 2 get 0.
std::vector<double> local_clustering(const Graph& g);

struct ClusteringProfile {
  double global = 0.0;                          // mean local clustering over all vertices
  std::map<std::size_t, double> per_degree;     // degrees >= 2 only
};

ClusteringProfile clustering_profile(const Graph& g);

}  // namespace centrank
