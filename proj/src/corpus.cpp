#include "centrank/corpus.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>

#include "centrank/error.hpp"
#include "centrank/io.hpp"
#include "centrank/parallel.hpp"

namespace centrank {

using nlohmann::json;

std::string_view to_string(CorpusKind k) { return k == CorpusKind::generic ? "generic" : "specific"; }

CorpusKind corpus_kind_from_string(std::string_view name) {
  if (name == "generic") return CorpusKind::generic;
  if (name == "specific") return CorpusKind::specific;
  throw UsageError("unknown corpus kind '" + std::string(name) + "'");
}

void GenericCorpusParams::validate() const {
  if (count < 1) throw UsageError("corpus count must be at least 1");
  if (size_min < 11) throw UsageError("minimum network size must be at least 11");
  if (size_max < size_min) throw UsageError("maximum network size is below the minimum");
  if (!(clustering_min >= 0 && clustering_max <= 1 && clustering_min <= clustering_max))
    throw UsageError("clustering range must satisfy 0 <= min <= max <= 1");
}

void SpecificCorpusParams::validate() const {
  if (reference_degrees.counts.empty()) throw UsageError("reference graph has no edges");
  if (sizes.empty()) throw UsageError("at least one network size is required");
  if (count_per_size < 1) throw UsageError("count per size must be at least 1");
  for (std::size_t s : sizes) {
    if (s < 10) throw UsageError("network sizes must be at least 10");
    if (s > reference_degrees.vertex_count())
      throw UsageError("size " + std::to_string(s) + " exceeds the reference graph's " +
                       std::to_string(reference_degrees.vertex_count()) + " vertices");
  }
}

std::uint64_t record_seed(std::uint64_t master, std::size_t index, std::size_t attempt) {
  // splitmix64 finalizer over a simple combination
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ static_cast<std::uint64_t>(index)) ^ static_cast<std::uint64_t>(attempt));
}

namespace {

json histogram_json(const DegreeHistogram& h) {
  json out = json::object();
  for (auto [d, c] : h.counts) out[std::to_string(d)] = c;
  return out;
}

struct Draft {
  BterConfig config;
  json description;
};

// Builds, reduces and measures one network; empty if its LCC is too small.
std::optional<CorpusRecord> realize(const Draft& draft, std::size_t index, std::uint64_t seed,
                                    const EigenvectorOptions& eigen) {
  Graph g = bter_generate(draft.config);
  Subgraph lcc = largest_connected_component(g);
  if (lcc.graph.num_vertices() < kMinRecordVertices) return std::nullopt;

  CorpusRecord r;
  r.index = index;
  r.seed = seed;
  r.exact = compute_exact_centralities(lcc.graph, eigen);
  r.meta = {{"index", index},
            {"seed", seed},
            {"config", draft.description},
            {"sizes",
             {{"generated_vertices", g.num_vertices()},
              {"generated_edges", g.num_edges()},
              {"vertices", lcc.graph.num_vertices()},
              {"edges", lcc.graph.num_edges()}}},
            {"eigenvector_converged", r.exact.eigenvector_converged}};
  r.graph = std::move(lcc.graph);
  return r;
}

template <class MakeDraft>
std::vector<CorpusRecord> generate_records(std::size_t count, std::uint64_t master, const EigenvectorOptions& eigen,
                                           MakeDraft make_draft) {
  std::vector<CorpusRecord> records(count);
  std::vector<std::string> failures(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(thread_count()))
  for (std::size_t i = 0; i < count; ++i) {
    try {
      bool done = false;
      for (std::size_t attempt = 0; attempt < kMaxRecordAttempts && !done; ++attempt) {
        const std::uint64_t seed = record_seed(master, i, attempt);
        Draft draft = make_draft(i, seed);
        if (auto r = realize(draft, i, seed, eigen)) {
          r->meta["attempts"] = attempt + 1;
          records[i] = std::move(*r);
          done = true;
        }
      }
      if (!done)
        failures[i] = "record " + std::to_string(i) + ": largest component stayed below " +
                      std::to_string(kMinRecordVertices) + " vertices after " +
                      std::to_string(kMaxRecordAttempts) + " attempts";
    } catch (const std::exception& e) {
      failures[i] = "record " + std::to_string(i) + ": " + e.what();
    }
  }
  for (const auto& f : failures)
    if (!f.empty()) throw NumericalError(f);
  return records;
}

}  // namespace

Corpus make_generic_corpus(const GenericCorpusParams& params, std::uint64_t seed, const EigenvectorOptions& eigen) {
  params.validate();
  Corpus corpus;
  corpus.kind = CorpusKind::generic;
  corpus.seed = seed;
  corpus.eigen = eigen;
  corpus.params = {{"count", params.count},
                   {"size_min", params.size_min},
                   {"size_max", params.size_max},
                   {"clustering_min", params.clustering_min},
                   {"clustering_max", params.clustering_max}};

  corpus.records = generate_records(params.count, seed, eigen, [&](std::size_t, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const auto n = std::uniform_int_distribution<std::size_t>(params.size_min, params.size_max)(rng);
    const double c = std::uniform_real_distribution<double>(params.clustering_min, params.clustering_max)(rng);
    const std::size_t dmax = std::min(n - 1, std::max<std::size_t>(10, n / 5));
    DegreeModel model;
    if (std::bernoulli_distribution(0.5)(rng)) {
      model = DegreeModel::power_law(std::uniform_real_distribution<double>(2.0, 3.0)(rng), dmax);
    } else {
      const double mu = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
      const double sigma = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
      model = DegreeModel::lognormal(mu, sigma, dmax);
    }
    Draft d;
    d.config.target = sample_degree_histogram(model, n, rng());
    d.config.clustering = ClusteringSpec::global(c);
    d.config.seed = rng();
    d.description = {{"vertices", n}, {"degree_model", model.describe()}, {"clustering", c}};
    return d;
  });
  return corpus;
}

Corpus make_specific_corpus(const SpecificCorpusParams& params, std::uint64_t seed, const EigenvectorOptions& eigen) {
  params.validate();
  Corpus corpus;
  corpus.kind = CorpusKind::specific;
  corpus.seed = seed;
  corpus.eigen = eigen;
  corpus.params = {{"reference", params.reference_name},
                   {"sizes", params.sizes},
                   {"count_per_size", params.count_per_size},
                   {"reference_vertices", params.reference_degrees.vertex_count()},
                   {"reference_clustering", params.reference_clustering.global}};

  const ClusteringSpec clustering = params.reference_clustering.per_degree.empty()
                                        ? ClusteringSpec::global(params.reference_clustering.global)
                                        : ClusteringSpec::by_degree(params.reference_clustering.per_degree);
  const std::size_t count = params.sizes.size() * params.count_per_size;
  corpus.records = generate_records(count, seed, eigen, [&](std::size_t i, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const std::size_t n = params.sizes[i / params.count_per_size];
    Draft d;
    d.config.target = shrink_histogram(params.reference_degrees, n, rng());
    d.config.clustering = clustering;
    d.config.seed = rng();
    d.description = {{"vertices", n}, {"target_degrees", histogram_json(d.config.target)}};
    return d;
  });
  return corpus;
}

namespace {

std::string record_dir_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "record_%04zu", index);
  return buf;
}

}  // namespace

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());

  json records = json::array();
  for (const auto& r : corpus.records) {
    const std::string name = record_dir_name(r.index);
    const fs::path rdir = dir / name;
    fs::create_directories(rdir, ec);
    if (ec) throw InputError("cannot create " + rdir.string() + ": " + ec.message());
    write_edge_list(r.graph, rdir / "graph.edges");

    std::ofstream out(rdir / "targets.csv");
    if (!out) throw InputError("cannot write " + (rdir / "targets.csv").string());
    out << "vertex,degree,eigenvector,betweenness,closeness\n";
    for (std::size_t v = 0; v < r.graph.num_vertices(); ++v)
      out << v << ',' << format_double(r.exact.degree.values[v]) << ','
          << format_double(r.exact.eigenvector.values[v]) << ',' << format_double(r.exact.betweenness.values[v])
          << ',' << format_double(r.exact.closeness.values[v]) << '\n';
    out.close();
    write_json(rdir / "meta.json", r.meta);
    records.push_back({{"index", r.index},
                       {"dir", name},
                       {"seed", r.seed},
                       {"vertices", r.graph.num_vertices()},
                       {"edges", r.graph.num_edges()}});
  }
  json manifest = {{"format", "centrank-corpus"},
                   {"version", 1},
                   {"kind", std::string(to_string(corpus.kind))},
                   {"seed", corpus.seed},
                   {"params", corpus.params},
                   {"eigenvector",
                    {{"tolerance", corpus.eigen.tolerance},
                     {"max_iterations", corpus.eigen.max_iterations},
                     {"shift", corpus.eigen.shift}}},
                   {"records", records}};
  write_json(dir / "manifest.json", manifest);
}

Corpus read_corpus(const std::filesystem::path& dir) {
  const json manifest = read_json(dir / "manifest.json");
  Corpus corpus;
  try {
    if (manifest.value("format", "") != "centrank-corpus") throw InputError(dir.string() + " is not a corpus");
    corpus.kind = corpus_kind_from_string(manifest.at("kind").get<std::string>());
    corpus.seed = manifest.at("seed").get<std::uint64_t>();
    corpus.params = manifest.at("params");
    const auto& ev = manifest.at("eigenvector");
    corpus.eigen.tolerance = ev.at("tolerance").get<double>();
    corpus.eigen.max_iterations = ev.at("max_iterations").get<std::size_t>();
    corpus.eigen.shift = ev.at("shift").get<bool>();

    for (const auto& entry : manifest.at("records")) {
      const auto rdir = dir / entry.at("dir").get<std::string>();
      CorpusRecord r;
      r.index = entry.at("index").get<std::size_t>();
      r.seed = entry.at("seed").get<std::uint64_t>();
      r.meta = read_json(rdir / "meta.json");

      const VertexTable t = read_vertex_csv(rdir / "targets.csv");
      const std::size_t n = t.ids.size();
      std::vector<Vertex> slot(n, kNoVertex);  // written id -> row
      for (std::size_t row = 0; row < n; ++row) {
        if (t.ids[row] < 0 || static_cast<std::size_t>(t.ids[row]) >= n || slot[t.ids[row]] != kNoVertex)
          throw InputError(rdir.string() + "/targets.csv: vertex ids must be a permutation of 0..n-1");
        slot[t.ids[row]] = static_cast<Vertex>(row);
      }

      // Edge-list ids are remapped on load; map them back to the written ids.
      const LoadedGraph loaded = load_edge_list(rdir / "graph.edges");
      std::vector<Edge> edges;
      edges.reserve(loaded.graph.num_edges());
      for (auto [u, v] : loaded.graph.edges()) {
        const auto a = loaded.original_ids[u];
        const auto b = loaded.original_ids[v];
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
          throw InputError(rdir.string() + "/graph.edges: vertex id outside targets.csv");
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
      }
      r.graph = Graph::from_edges(n, edges);

      auto column = [&](const char* name, Measure m) {
        const auto& src = t.column(name);
        CentralityVector c{m, std::vector<double>(n)};
        for (std::size_t id = 0; id < n; ++id) c.values[id] = src[slot[id]];
        return c;
      };
      r.exact.degree = column("degree", Measure::degree);
      r.exact.eigenvector = column("eigenvector", Measure::eigenvector);
      r.exact.betweenness = column("betweenness", Measure::betweenness);
      r.exact.closeness = column("closeness", Measure::closeness);
      r.exact.eigenvector_converged = r.meta.value("eigenvector_converged", true);
      corpus.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw InputError("malformed corpus manifest in " + dir.string() + ": " + e.what());
  }
  return corpus;
}

}  // namespace centrank
