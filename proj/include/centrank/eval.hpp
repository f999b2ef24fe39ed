#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "centrank/centrality.hpp"

namespace centrank {

/// Kendall tau-b in O(n log n) (sort by a, count inversions in b with a
/// merge sort). Empty when either side is entirely tied.
std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b);

/// 1 - SSE/SST around the target mean. Throws on a constant target.
double r_squared(std::span<const double> predicted, std::span<const double> target);

/// {0.2, 0.5, 1, 2, 5, 10, 15, 20, 25} percent.
std::vector<double> default_percentile_grid();

/// Top-k overlap for k = max(1, floor(p n / 100)) per grid point; top sets
/// are taken by rank (1 = best) with ties broken by vertex id.
std::map<double, double> percentile_match(const RankVector& approx, const RankVector& exact,
                                          std::span<const double> grid);

/// Ranked output of one approximation method for one measure, one entry per
/// trial (a deterministic method has one trial).
struct MethodResult {
  std::string name;
  std::map<Measure, std::vector<RankVector>> trials;
  double wall_time_ms = 0.0;
};

struct EvalReport {
  std::string method;
  Measure measure = Measure::betweenness;
  std::optional<double> tau_b;  // mean over trials
  double tau_b_stdev = 0.0;
  std::optional<double> r_squared;  // on normalized ranks, mean over trials
  std::map<double, double> percentile_match;
  std::size_t trials = 0;
  double wall_time_ms = 0.0;
};

/// One report per method per measure present in `exact`.
std::vector<EvalReport> compare_report(const std::map<Measure, CentralityVector>& exact,
                                       std::span<const MethodResult> methods, std::span<const double> grid);

nlohmann::json reports_to_json(std::span<const EvalReport> reports);
/// Plain-text table: one row per measure, one column per method.
std::string reports_to_table(std::span<const EvalReport> reports);

}  // namespace centrank
