#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "centrank/error.hpp"
#include "centrank/parallel.hpp"
#include "centrank/sampling.hpp"
#include "support.hpp"

using namespace centrank;
using namespace centrank::testing;

TEST_CASE("plan size and validity") {
  CHECK(make_plan(1000, 0.025, 1).pivots.size() == 25);
  CHECK(make_plan(1000, 0.05, 1).pivots.size() == 50);
  CHECK(make_plan(10, 0.01, 1).pivots.size() == 1);
  CHECK(make_plan(10, 1.0, 1).pivots.size() == 10);
  auto p = make_plan(500, 0.2, 9);
  CHECK(std::is_sorted(p.pivots.begin(), p.pivots.end()));
  CHECK(std::adjacent_find(p.pivots.begin(), p.pivots.end()) == p.pivots.end());
  CHECK(p.pivots.back() < 500);
  CHECK_THROWS_AS(make_plan(10, 0.0, 1), UsageError);
  CHECK_THROWS_AS(make_plan(10, 1.5, 1), UsageError);
}

TEST_CASE("a larger fraction with the same seed extends the smaller plan") {
  auto small = make_plan(2000, 0.025, 4).pivots;
  auto large = make_plan(2000, 0.05, 4).pivots;
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  CHECK(make_plan(2000, 0.05, 4).pivots == large);
  CHECK(make_plan(2000, 0.05, 5).pivots != large);
}

TEST_CASE("pivots are uniform over vertices") {
  // Each vertex is drawn with probability k/n; chi-square over 20 vertices.
  std::vector<double> hits(20, 0);
  const int plans = 4000;
  for (int s = 0; s < plans; ++s)
    for (Vertex v : make_plan(20, 0.25, s).pivots) ++hits[v];
  const double expected = plans * 5.0 / 20.0;
  double chi2 = 0;
  for (double h : hits) chi2 += (h - expected) * (h - expected) / expected;
  CHECK(chi2 < 43.8);  // 99.9% quantile of chi-square with 19 dof
}

TEST_CASE("full sample reproduces the exact values bitwise") {
  ScopedThreads one(1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_connected_graph(40, 0.08, seed);
    auto exact = betweenness_closeness_exact(g);
    auto est = approximate_centralities(g, make_plan(g, 1.0, seed));
    CHECK(est.betweenness.values == exact.betweenness.values);
    CHECK(est.closeness.values == exact.closeness.values);
  }
}

TEST_CASE("pivots get exact closeness") {
  Graph g = random_connected_graph(60, 0.05, 2);
  auto exact = betweenness_closeness_exact(g);
  auto plan = make_plan(g, 0.1, 3);
  auto est = approximate_centralities(g, plan);
  for (Vertex p : plan.pivots) CHECK(est.closeness.values[p] == doctest::Approx(exact.closeness.values[p]));
}

TEST_CASE("betweenness estimator is unbiased") {
  Graph g = random_connected_graph(30, 0.08, 11);
  auto exact = betweenness_closeness_exact(g).betweenness.values;
  std::vector<double> mean(30, 0.0);
  const int trials = 3000;
  for (int s = 0; s < trials; ++s) {
    auto est = approximate_centralities(g, make_plan(g, 0.2, s)).betweenness.values;
    for (std::size_t v = 0; v < 30; ++v) mean[v] += est[v] / trials;
  }
  const double total = std::accumulate(exact.begin(), exact.end(), 0.0);
  for (std::size_t v = 0; v < 30; ++v) CHECK(std::abs(mean[v] - exact[v]) < 0.03 * total / 30 + 0.05 * exact[v]);
}

TEST_CASE("disconnected graphs are rejected") {
  Graph g = make_graph(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(approximate_centralities(g, make_plan(g, 1.0, 0)), InputError);
}
