// Serial reference kernels against their OpenMP counterparts.
// Thread count is the benchmark argument; 0 means the serial reference.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <thread>

#include "centrank/bter.hpp"
#include "centrank/kernels.hpp"
#include "centrank/neural.hpp"
#include "centrank/parallel.hpp"

using namespace centrank;

namespace {

const Graph& bench_graph() {
  static const Graph g = [] {
    BterConfig cfg;
    cfg.target = sample_degree_histogram(DegreeModel::power_law(2.3, 200), 3000, 1);
    cfg.clustering = ClusteringSpec::global(0.3);
    cfg.seed = 2;
    return largest_connected_component(bter_generate(cfg)).graph;
  }();
  return g;
}

struct Batch {
  Mlp model;
  RowMatrix x, y;
};

const Batch& bench_batch() {
  static const Batch b = [] {
    Batch b{Mlp::init(default_layer_sizes(2, 1), 3), RowMatrix(20000, 2), RowMatrix(20000, 1)};
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0, 1);
    for (Eigen::Index i = 0; i < b.x.size(); ++i) b.x.data()[i] = u(rng);
    for (Eigen::Index i = 0; i < b.y.size(); ++i) b.y.data()[i] = u(rng);
    return b;
  }();
  return b;
}

void threads_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int t = 1; t <= hw; t *= 2) b->Arg(t);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

void BM_Brandes(benchmark::State& state) {
  const Graph& g = bench_graph();
  std::vector<Vertex> sources(g.num_vertices());
  std::iota(sources.begin(), sources.end(), Vertex{0});
  const auto threads = static_cast<std::size_t>(state.range(0));
  ScopedThreads scope(threads == 0 ? 1 : threads);
  for (auto _ : state) {
    auto r = threads == 0 ? kernels::reference::brandes_accumulate(g, sources) : kernels::brandes_accumulate(g, sources);
    benchmark::DoNotOptimize(r.dependency.data());
  }
  state.counters["vertices"] = static_cast<double>(g.num_vertices());
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_Brandes)->Apply(threads_args);

void BM_NormalEquations(benchmark::State& state) {
  const Batch& b = bench_batch();
  const auto threads = static_cast<std::size_t>(state.range(0));
  ScopedThreads scope(threads == 0 ? 1 : threads);
  for (auto _ : state) {
    auto ne = threads == 0 ? kernels::reference::normal_equations(b.model, b.x, b.y)
                           : kernels::normal_equations(b.model, b.x, b.y);
    benchmark::DoNotOptimize(ne.jtj.data());
  }
  state.counters["rows"] = static_cast<double>(b.x.rows());
}
BENCHMARK(BM_NormalEquations)->Apply(threads_args);

}  // namespace

BENCHMARK_MAIN();
