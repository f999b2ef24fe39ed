#include "centrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "centrank/error.hpp"
#include "centrank/io.hpp"

namespace centrank {

namespace {

// Sum of t(t-1)/2 over runs of equal adjacent values.
template <class Eq>
std::int64_t tied_pairs(std::size_t n, Eq equal) {
  std::int64_t total = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total + run * (run - 1) / 2;
}

// Stable merge sort of `v`, returning the number of strict inversions.
std::int64_t count_inversions(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> buf(n);
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
  return swaps;
}

}  // namespace

std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("kendall_tau_b: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw InputError("kendall_tau_b needs at least two observations");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i] < a[j] || (a[i] == a[j] && b[i] < b[j]);
  });

  const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t ties_a = tied_pairs(n, [&](std::size_t i, std::size_t j) { return a[order[i]] == a[order[j]]; });
  const std::int64_t ties_ab = tied_pairs(
      n, [&](std::size_t i, std::size_t j) { return a[order[i]] == a[order[j]] && b[order[i]] == b[order[j]]; });

  std::vector<double> bs(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = b[order[i]];
  const std::int64_t discordant = count_inversions(bs);
  const std::int64_t ties_b = tied_pairs(n, [&](std::size_t i, std::size_t j) { return bs[i] == bs[j]; });

  const std::int64_t left = total - ties_a;
  const std::int64_t right = total - ties_b;
  if (left == 0 || right == 0) return std::nullopt;
  const std::int64_t numerator = total - ties_a - ties_b + ties_ab - 2 * discordant;
  return static_cast<double>(numerator) / std::sqrt(static_cast<double>(left) * static_cast<double>(right));
}

double r_squared(std::span<const double> predicted, std::span<const double> target) {
  if (predicted.size() != target.size()) throw InputError("r_squared: length mismatch");
  if (target.size() < 2) throw InputError("r_squared needs at least two observations");
  const double mean = std::accumulate(target.begin(), target.end(), 0.0) / static_cast<double>(target.size());
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    sse += (predicted[i] - target[i]) * (predicted[i] - target[i]);
    sst += (target[i] - mean) * (target[i] - mean);
  }
  if (sst == 0.0) throw InputError("r_squared is undefined for a constant target");
  return 1.0 - sse / sst;
}

std::vector<double> default_percentile_grid() { return {0.2, 0.5, 1, 2, 5, 10, 15, 20, 25}; }

namespace {

std::vector<std::size_t> top_k(const RankVector& r, std::size_t k) {
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.ranks[a] < r.ranks[b]; });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

std::map<double, double> percentile_match(const RankVector& approx, const RankVector& exact,
                                          std::span<const double> grid) {
  if (approx.size() != exact.size()) throw InputError("percentile_match: length mismatch");
  const std::size_t n = exact.size();
  if (n == 0) throw InputError("percentile_match: empty ranking");
  std::map<double, double> out;
  for (double p : grid) {
    if (!(p > 0 && p <= 100)) throw UsageError("percentile grid values must lie in (0, 100]");
    // Guard against p * n / 100 landing just below an integer.
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(p * static_cast<double>(n) / 100.0 + 1e-9)));
    auto a = top_k(approx, k);
    auto e = top_k(exact, k);
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), e.begin(), e.end(), std::back_inserter(common));
    out[p] = static_cast<double>(common.size()) / static_cast<double>(k);
  }
  return out;
}

std::vector<EvalReport> compare_report(const std::map<Measure, CentralityVector>& exact,
                                       std::span<const MethodResult> methods, std::span<const double> grid) {
  std::vector<EvalReport> reports;
  for (const auto& method : methods) {
    for (const auto& [measure, truth] : exact) {
      auto it = method.trials.find(measure);
      if (it == method.trials.end() || it->second.empty()) continue;
      const RankVector exact_rank = rank_vertices(truth);
      const double n = static_cast<double>(truth.size());
      std::vector<double> exact_norm(exact_rank.ranks);
      for (double& x : exact_norm) x /= n;

      EvalReport rep;
      rep.method = method.name;
      rep.measure = measure;
      rep.trials = it->second.size();
      rep.wall_time_ms = method.wall_time_ms;
      std::vector<double> taus;
      std::vector<double> r2s;
      for (const RankVector& trial : it->second) {
        if (trial.size() != truth.size())
          throw InputError("method '" + method.name + "' has " + std::to_string(trial.size()) +
                           " vertices, exact has " + std::to_string(truth.size()));
        if (auto t = kendall_tau_b(trial.ranks, exact_rank.ranks)) taus.push_back(*t);
        std::vector<double> norm(trial.ranks);
        for (double& x : norm) x /= n;
        bool constant = std::adjacent_find(exact_norm.begin(), exact_norm.end(), std::not_equal_to<>()) ==
                        exact_norm.end();
        if (!constant) r2s.push_back(r_squared(norm, exact_norm));
        for (auto [p, frac] : percentile_match(trial, exact_rank, grid)) rep.percentile_match[p] += frac;
      }
      for (auto& [p, frac] : rep.percentile_match) frac /= static_cast<double>(rep.trials);
      if (!taus.empty()) {
        const double mean = std::accumulate(taus.begin(), taus.end(), 0.0) / static_cast<double>(taus.size());
        double var = 0.0;
        for (double t : taus) var += (t - mean) * (t - mean);
        rep.tau_b = mean;
        rep.tau_b_stdev = taus.size() > 1 ? std::sqrt(var / static_cast<double>(taus.size() - 1)) : 0.0;
      }
      if (!r2s.empty()) rep.r_squared = std::accumulate(r2s.begin(), r2s.end(), 0.0) / static_cast<double>(r2s.size());
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

nlohmann::json reports_to_json(std::span<const EvalReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json pm = nlohmann::json::object();
    for (auto [p, frac] : r.percentile_match) pm[format_double(p)] = frac;
    arr.push_back({{"method", r.method},
                   {"measure", std::string(to_string(r.measure))},
                   {"tau_b", r.tau_b ? nlohmann::json(*r.tau_b) : nlohmann::json(nullptr)},
                   {"tau_b_stdev", r.tau_b_stdev},
                   {"r2", r.r_squared ? nlohmann::json(*r.r_squared) : nlohmann::json(nullptr)},
                   {"percentile_match", pm},
                   {"trials", r.trials},
                   {"wall_time_ms", r.wall_time_ms}});
  }
  return arr;
}

std::string reports_to_table(std::span<const EvalReport> reports) {
  std::vector<std::string> methods;
  std::vector<Measure> measures;
  for (const auto& r : reports) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    if (std::find(measures.begin(), measures.end(), r.measure) == measures.end()) measures.push_back(r.measure);
  }
  std::size_t width = 12;
  for (const auto& m : methods) width = std::max(width, m.size() + 2);

  std::ostringstream os;
  os << std::left << std::setw(14) << "tau_b";
  for (const auto& m : methods) os << std::right << std::setw(static_cast<int>(width)) << m;
  os << '\n';
  for (Measure measure : measures) {
    os << std::left << std::setw(14) << to_string(measure);
    for (const auto& m : methods) {
      auto it = std::find_if(reports.begin(), reports.end(),
                             [&](const EvalReport& r) { return r.method == m && r.measure == measure; });
      std::ostringstream cell;
      if (it != reports.end() && it->tau_b) {
        cell << std::fixed << std::setprecision(2) << *it->tau_b;
        if (it->trials > 1) cell << " +-" << std::setprecision(2) << it->tau_b_stdev;
      } else {
        cell << '-';
      }
      os << std::right << std::setw(static_cast<int>(width)) << cell.str();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace centrank
