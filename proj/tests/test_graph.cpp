#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "centrank/error.hpp"
#include "centrank/graph.hpp"
#include "support.hpp"

using namespace centrank;
using namespace centrank::testing;

namespace {

// Union-find labelling, independent of the BFS in the library.
std::vector<std::size_t> union_find_roots(const Graph& g) {
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges()) {
    auto a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> root(g.num_vertices());
  for (std::size_t v = 0; v < root.size(); ++v) root[v] = find(v);
  return root;
}

}  // namespace

TEST_CASE("from_edges drops loops and duplicates and keeps adjacency symmetric") {
  Graph g = make_graph(4, {{0, 1}, {1, 0}, {2, 2}, {1, 2}, {2, 1}, {3, 1}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(2, 2));
  CHECK_FALSE(g.has_edge(0, 3));
  for (Vertex v = 0; v < 4; ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex w : nb) CHECK(g.has_edge(w, v));
  }
  CHECK(g.degree(1) == 3);
}

TEST_CASE("edge count matches a hash-set oracle on random multigraph input") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<Edge> raw;
    std::set<std::pair<Vertex, Vertex>> unique;
    for (int i = 0; i < 200; ++i) {
      Vertex u = rng() % n, v = rng() % n;
      raw.emplace_back(u, v);
      if (u != v) unique.emplace(std::min(u, v), std::max(u, v));
    }
    Graph g = Graph::from_edges(n, raw);
    CHECK(g.num_edges() == unique.size());
    auto e = g.edges();
    CHECK(std::set<std::pair<Vertex, Vertex>>(e.begin(), e.end()) == unique);
  }
}

TEST_CASE("edge list loader remaps ids by first appearance and reports cleanup") {
  std::istringstream in("# comment\n% another\n10 20\n20 30\n\n30 10\n20 20\n10 20\n");
  LoadedGraph l = load_edge_list(in);
  CHECK(l.graph.num_vertices() == 3);
  CHECK(l.graph.num_edges() == 3);
  CHECK(l.original_ids == std::vector<std::int64_t>{10, 20, 30});
  CHECK(l.stats.self_loops == 1);
  CHECK(l.stats.duplicates == 1);
  CHECK(l.stats.edge_lines == 5);
}

TEST_CASE("edge list loader rejects malformed and empty input") {
  std::istringstream bad("1 2\n3 x\n");
  CHECK_THROWS_AS(load_edge_list(bad), InputError);
  std::istringstream one("1\n");
  CHECK_THROWS_AS(load_edge_list(one), InputError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(load_edge_list(empty), InputError);
}

TEST_CASE("write then load reproduces the graph and its numbering") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_connected_graph(30, 0.1, seed);
    std::stringstream buf;
    write_edge_list(g, buf);
    LoadedGraph l = load_edge_list(buf);
    REQUIRE(l.graph.num_vertices() == g.num_vertices());
    // Mapping back through original ids always recovers the graph.
    std::vector<Edge> mapped;
    for (auto [u, v] : l.graph.edges())
      mapped.emplace_back(static_cast<Vertex>(l.original_ids[u]), static_cast<Vertex>(l.original_ids[v]));
    CHECK(Graph::from_edges(g.num_vertices(), mapped) == g);
    std::vector<std::int64_t> identity(g.num_vertices());
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(l.original_ids == identity);
  }
}

TEST_CASE("largest connected component agrees with union-find") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = random_graph(60, 0.03, seed);
    auto roots = union_find_roots(g);
    std::map<std::size_t, std::size_t> size;
    for (auto r : roots) ++size[r];
    // Largest size, smallest root on ties (roots are the smallest member).
    std::size_t best_root = 0, best = 0;
    for (auto [r, s] : size)
      if (s > best) best = s, best_root = r;
    Subgraph lcc = largest_connected_component(g);
    CHECK(lcc.graph.num_vertices() == best);
    CHECK(is_connected(lcc.graph));
    for (Vertex v = 0; v < lcc.graph.num_vertices(); ++v) CHECK(roots[lcc.new_to_old[v]] == best_root);
    std::size_t internal = 0;
    for (auto [u, v] : g.edges())
      if (roots[u] == best_root) {
        ++internal;
        CHECK(lcc.graph.has_edge(lcc.old_to_new[u], lcc.old_to_new[v]));
      }
    CHECK(lcc.graph.num_edges() == internal);
  }
}

TEST_CASE("component ties go to the smallest id") {
  Graph g = make_graph(6, {{4, 5}, {0, 3}, {1, 2}});
  Subgraph lcc = largest_connected_component(g);
  CHECK(lcc.new_to_old == std::vector<Vertex>{0, 3});
  CHECK(lcc.old_to_new[1] == kNoVertex);
}

TEST_CASE("degree histogram excludes isolated vertices") {
  Graph g = make_graph(5, {{0, 1}, {1, 2}});
  DegreeHistogram h = degree_histogram(g);
  CHECK(h.counts == std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}});
  CHECK(h.vertex_count() == 3);
  CHECK(h.degree_sum() == 4);
  CHECK(h.degree_sequence() == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("total variation distance") {
  DegreeHistogram a{{{1, 2}, {2, 2}}};
  DegreeHistogram b{{{1, 1}, {2, 3}}};
  CHECK(total_variation(a, a) == doctest::Approx(0.0));
  CHECK(total_variation(a, b) == doctest::Approx(0.25));
  DegreeHistogram c{{{5, 7}}};
  CHECK(total_variation(a, c) == doctest::Approx(1.0));
}

TEST_CASE("clustering on small graphs") {
  CHECK(local_clustering(complete_graph(5)) == std::vector<double>(5, 1.0));
  CHECK(local_clustering(star_graph(4)) == std::vector<double>(5, 0.0));
  // Triangle with a pendant: vertex 2 has neighbors {0,1,3} with one link.
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  auto cc = local_clustering(g);
  CHECK(cc[0] == doctest::Approx(1.0));
  CHECK(cc[2] == doctest::Approx(1.0 / 3.0));
  CHECK(cc[3] == 0.0);
  CHECK(triangle_counts(g) == std::vector<std::size_t>{1, 1, 1, 0});
  ClusteringProfile p = clustering_profile(g);
  CHECK(p.global == doctest::Approx((1 + 1 + 1.0 / 3) / 4));
  CHECK(p.per_degree.size() == 2);
  CHECK(p.per_degree.at(2) == doctest::Approx(1.0));
  CHECK(p.per_degree.at(3) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("triangle counts match a brute-force triple scan") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_graph(25, 0.3, seed);
    std::vector<std::size_t> brute(25, 0);
    for (Vertex a = 0; a < 25; ++a)
      for (Vertex b = a + 1; b < 25; ++b)
        for (Vertex c = b + 1; c < 25; ++c)
          if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++brute[a], ++brute[b], ++brute[c];
    CHECK(triangle_counts(g) == brute);
  }
}
