#include <doctest.h>

#include <numeric>
#include <sstream>

#include "centrank/error.hpp"
#include "centrank/features.hpp"
#include "support.hpp"

using namespace centrank;
using namespace centrank::testing;

TEST_CASE("second-level degree") {
  CHECK(second_level_degree(star_graph(3)).values == std::vector<double>{6, 4, 4, 4});
  Graph g = random_connected_graph(40, 0.1, 1);
  auto s = second_level_degree(g).values;
  for (Vertex v = 0; v < 40; ++v) {
    double want = static_cast<double>(g.degree(v));
    for (Vertex u = 0; u < 40; ++u)
      if (g.has_edge(u, v)) want += static_cast<double>(g.degree(u));
    CHECK(s[v] == want);
  }
}

TEST_CASE("normalized ranks lie in (0, 1] and sum to (n + 1) / 2") {
  Graph g = random_connected_graph(57, 0.1, 2);
  auto r = normalized_ranks(degree_centrality(g));
  CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(58.0 / 2));
  for (double x : r) {
    CHECK(x > 0);
    CHECK(x <= 1);
  }
  auto star = normalized_ranks(degree_centrality(star_graph(3)));
  CHECK(star == std::vector<double>{0.25, 0.75, 0.75, 0.75});
}

TEST_CASE("feature matrices have the documented layout and are reproducible") {
  Graph g = random_connected_graph(30, 0.1, 3);
  auto exact = compute_exact_centralities(g);
  const Measure both[] = {Measure::betweenness, Measure::closeness};
  auto f = build_features(g, exact, 3, both);
  CHECK(f.rows() == 30);
  CHECK(f.x.cols() == 3);
  CHECK(f.y.cols() == 2);
  CHECK(f.inputs == input_measures(3));
  auto deg = normalized_ranks(exact.degree);
  auto clo = normalized_ranks(exact.closeness);
  for (Eigen::Index r = 0; r < 30; ++r) {
    CHECK(f.x(r, 0) == deg[r]);
    CHECK(f.y(r, 1) == clo[r]);
  }
  auto again = build_features(g, exact, 3, both);
  CHECK(again.x == f.x);
  CHECK(again.y == f.y);

  std::ostringstream csv;
  write_features_csv(f, csv);
  CHECK(csv.str().rfind("vertex,degree,eigenvector,second_level_degree,target_betweenness,target_closeness\n", 0) == 0);

  const Measure bad[] = {Measure::degree};
  CHECK_THROWS_AS(build_features(g, exact, 2, bad), UsageError);
  CHECK_THROWS_AS(build_features(g, exact, 4, both), UsageError);
  CHECK_THROWS_AS(build_features(g, exact, 2, std::span<const Measure>{}), UsageError);
}
