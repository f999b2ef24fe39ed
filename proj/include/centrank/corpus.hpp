#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "centrank/bter.hpp"
#include "centrank/centrality.hpp"
#include "centrank/graph.hpp"

namespace centrank {

enum class CorpusKind { generic, specific };

std::string_view to_string(CorpusKind k);
CorpusKind corpus_kind_from_string(std::string_view name);

struct GenericCorpusParams {
  std::size_t count = 300;
  std::size_t size_min = 100;
  std::size_t size_max = 1000;
  double clustering_min = 0.0;
  double clustering_max = 0.7;

  void validate() const;
};

/// Networks shaped after a reference graph: its degree histogram is shrunk to
/// each requested size and its per-degree clustering is reused.
struct SpecificCorpusParams {
  DegreeHistogram reference_degrees;
  ClusteringProfile reference_clustering;
  std::vector<std::size_t> sizes{2000, 3000};
  std::size_t count_per_size = 400;
  std::string reference_name;

  void validate() const;
};

/// One generated network, reduced to its LCC, with exact targets.
struct CorpusRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // seed of the accepted attempt
  Graph graph;
  ExactCentralities exact;
  nlohmann::json meta;
};

struct Corpus {
  CorpusKind kind = CorpusKind::generic;
  std::uint64_t seed = 0;
  nlohmann::json params;
  EigenvectorOptions eigen;
  std::vector<CorpusRecord> records;
};

/// Seed of attempt `attempt` of record `index`; a fixed mix of the three.
std::uint64_t record_seed(std::uint64_t master, std::size_t index, std::size_t attempt = 0);

inline constexpr std::size_t kMinRecordVertices = 10;
inline constexpr std::size_t kMaxRecordAttempts = 100;

/// Records are generated in parallel; each record is a pure function of the
/// master seed and its index.
Corpus make_generic_corpus(const GenericCorpusParams& params, std::uint64_t seed, const EigenvectorOptions& eigen);
Corpus make_specific_corpus(const SpecificCorpusParams& params, std::uint64_t seed, const EigenvectorOptions& eigen);

/// Layout: manifest.json plus record_NNNN/{graph.edges, targets.csv, meta.json}.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus read_corpus(const std::filesystem::path& dir);

}  // namespace centrank
