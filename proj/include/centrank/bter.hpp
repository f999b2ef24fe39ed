#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "centrank/graph.hpp"

namespace centrank {

/// Discrete degree distribution on [1, max_degree].
struct DegreeModel {
  enum class Family { power_law, lognormal };

  Family family = Family::power_law;
  double exponent = 2.5;  // power law: P(d) ~ d^-exponent
  double log_mean = 1.0;  // lognormal location
  double log_sd = 1.0;    // lognormal scale
  std::size_t max_degree = 100;

  static DegreeModel power_law(double exponent, std::size_t max_degree);
  static DegreeModel lognormal(double log_mean, double log_sd, std::size_t max_degree);

  /// Throws UsageError on invalid parameters.
  void validate() const;
  /// Probability of each degree 1..max_degree (index 0 is degree 1).
  std::vector<double> pmf() const;
  /// P(D <= d).
  double cdf(std::size_t d) const;

  std::string describe() const;
};

/// n i.i.d. degrees from the model; one vertex is bumped by one if needed
/// to make the degree sum even.
DegreeHistogram sample_degree_histogram(const DegreeModel& model, std::size_t n, std::uint64_t seed);

/// Largest gap between the empirical CDF of `h` and the model CDF.
double ks_distance(const DegreeHistogram& h, const DegreeModel& model);

/// Target clustering: one global value or a value per degree.
class ClusteringSpec {
 public:
  ClusteringSpec() = default;
  static ClusteringSpec global(double value);
  static ClusteringSpec by_degree(std::map<std::size_t, double> values);

  bool is_global() const { return per_degree_.empty(); }
  double global_value() const { return global_; }
  const std::map<std::size_t, double>& per_degree() const { return per_degree_; }

  /// Value for degree d; per-degree specs use the nearest listed degree
  /// (the lower one on a tie).
  double at(std::size_t d) const;

 private:
  double global_ = 0.0;
  std::map<std::size_t, double> per_degree_;
};

struct BterConfig {
  DegreeHistogram target;
  ClusteringSpec clustering;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Block edge probability: the clustering value itself, clamped to [0, 1].
double block_density(double clustering);

struct BterGraph {
  Graph graph;
  std::vector<std::size_t> target_degree;  // per vertex
  std::vector<std::size_t> community;      // per vertex, communities numbered in packing order
  std::size_t block_edges = 0;             // edges inserted by the in-community phase
};

/// Three-phase BTER construction. Vertices receive target degrees in a
/// seeded random order; communities pack vertices ascending by degree into
/// groups of (first member's degree + 1); each community is an
/// Erdos-Renyi block; remaining (excess) degree is wired Chung-Lu style by
/// pairing shuffled excess-degree stubs, with loops and repeated pairs
/// discarded. Output may contain isolated vertices.
BterGraph bter_generate_detailed(const BterConfig& config);
inline Graph bter_generate(const BterConfig& config) { return bter_generate_detailed(config).graph; }

struct PowerLawFit {
  double exponent = 0.0;
  std::size_t max_degree = 0;
};

/// Maximum-likelihood exponent of a discrete power law on [1, max degree of h].
PowerLawFit fit_power_law(const DegreeHistogram& h);

/// Resamples `h` at `target_n` vertices through a fitted power law with
/// max degree capped at target_n - 1. A single-degree histogram is rescaled
/// instead of fitted.
DegreeHistogram shrink_histogram(const DegreeHistogram& h, std::size_t target_n, std::uint64_t seed);

}  // namespace centrank
