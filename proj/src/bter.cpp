#include "centrank/bter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "centrank/error.hpp"

namespace centrank {

DegreeModel DegreeModel::power_law(double exponent, std::size_t max_degree) {
  DegreeModel m;
  m.family = Family::power_law;
  m.exponent = exponent;
  m.max_degree = max_degree;
  m.validate();
  return m;
}

DegreeModel DegreeModel::lognormal(double log_mean, double log_sd, std::size_t max_degree) {
  DegreeModel m;
  m.family = Family::lognormal;
  m.log_mean = log_mean;
  m.log_sd = log_sd;
  m.max_degree = max_degree;
  m.validate();
  return m;
}

void DegreeModel::validate() const {
  if (max_degree < 1) throw UsageError("degree model max_degree must be at least 1");
  if (family == Family::power_law && !(exponent > 1.0 && std::isfinite(exponent)))
    throw UsageError("power-law exponent must be > 1");
  if (family == Family::lognormal && !(log_sd > 0.0 && std::isfinite(log_sd) && std::isfinite(log_mean)))
    throw UsageError("lognormal scale must be > 0");
}

std::vector<double> DegreeModel::pmf() const {
  validate();
  std::vector<double> p(max_degree);
  if (family == Family::power_law) {
    for (std::size_t d = 1; d <= max_degree; ++d) p[d - 1] = std::pow(static_cast<double>(d), -exponent);
  } else {
    auto phi = [&](double x) { return 0.5 * std::erfc(-(std::log(x) - log_mean) / (log_sd * std::sqrt(2.0))); };
    for (std::size_t d = 1; d <= max_degree; ++d)
      p[d - 1] = phi(static_cast<double>(d) + 0.5) - phi(static_cast<double>(d) - 0.5);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(total > 0)) throw UsageError("degree model puts no mass on [1, max_degree]");
  for (double& x : p) x /= total;
  return p;
}

double DegreeModel::cdf(std::size_t d) const {
  if (d == 0) return 0.0;
  auto p = pmf();
  const std::size_t upto = std::min(d, max_degree);
  return std::min(1.0, std::accumulate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(upto), 0.0));
}

std::string DegreeModel::describe() const {
  std::ostringstream os;
  if (family == Family::power_law)
    os << "power_law(exponent=" << exponent << ", max_degree=" << max_degree << ")";
  else
    os << "lognormal(log_mean=" << log_mean << ", log_sd=" << log_sd << ", max_degree=" << max_degree << ")";
  return os.str();
}

namespace {

void fix_parity(std::vector<std::size_t>& degrees, std::size_t n_cap, std::mt19937_64& rng) {
  const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (sum % 2 == 0) return;
  std::uniform_int_distribution<std::size_t> pick(0, degrees.size() - 1);
  std::size_t& d = degrees[pick(rng)];
  // A vertex already adjacent to everyone can only shrink.
  if (d + 1 > n_cap && d > 1)
    --d;
  else
    ++d;
}

DegreeHistogram to_histogram(const std::vector<std::size_t>& degrees) {
  DegreeHistogram h;
  for (std::size_t d : degrees) ++h.counts[d];
  return h;
}

}  // namespace

DegreeHistogram sample_degree_histogram(const DegreeModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 10) throw UsageError("degree histograms need at least 10 vertices");
  if (model.max_degree >= n) throw UsageError("degree model max_degree must be below the vertex count");
  auto p = model.pmf();
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> draw(p.begin(), p.end());
  std::vector<std::size_t> degrees(n);
  for (auto& d : degrees) d = draw(rng) + 1;
  fix_parity(degrees, n - 1, rng);
  return to_histogram(degrees);
}

double ks_distance(const DegreeHistogram& h, const DegreeModel& model) {
  const double n = static_cast<double>(h.vertex_count());
  if (n == 0) throw InputError("KS distance of an empty histogram");
  auto p = model.pmf();
  const std::size_t top = std::max(h.max_degree(), model.max_degree);
  double empirical = 0.0;
  double analytic = 0.0;
  double worst = 0.0;
  for (std::size_t d = 1; d <= top; ++d) {
    if (auto it = h.counts.find(d); it != h.counts.end()) empirical += static_cast<double>(it->second) / n;
    if (d <= p.size()) analytic += p[d - 1];
    worst = std::max(worst, std::abs(empirical - analytic));
  }
  return worst;
}

ClusteringSpec ClusteringSpec::global(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw UsageError("clustering must lie in [0, 1]");
  ClusteringSpec s;
  s.global_ = value;
  return s;
}

ClusteringSpec ClusteringSpec::by_degree(std::map<std::size_t, double> values) {
  if (values.empty()) throw UsageError("per-degree clustering needs at least one entry");
  for (auto [d, c] : values)
    if (!(c >= 0.0 && c <= 1.0)) throw UsageError("clustering must lie in [0, 1]");
  ClusteringSpec s;
  s.per_degree_ = std::move(values);
  return s;
}

double ClusteringSpec::at(std::size_t d) const {
  if (is_global()) return global_;
  auto hi = per_degree_.lower_bound(d);
  if (hi == per_degree_.end()) return std::prev(hi)->second;
  if (hi->first == d || hi == per_degree_.begin()) return hi->second;
  auto lo = std::prev(hi);
  return (d - lo->first <= hi->first - d) ? lo->second : hi->second;
}

void BterConfig::validate() const {
  if (target.counts.empty()) throw UsageError("BTER target histogram is empty");
  if (target.counts.begin()->first < 1) throw UsageError("BTER target degrees must be at least 1");
  if (target.degree_sum() % 2 != 0) throw UsageError("BTER target degree sum must be even");
}

double block_density(double clustering) { return std::clamp(clustering, 0.0, 1.0); }

BterGraph bter_generate_detailed(const BterConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  // Degrees dealt to vertices in a random order so ids carry no structure.
  std::vector<std::size_t> target = config.target.degree_sequence();
  const std::size_t n = target.size();
  std::shuffle(target.begin(), target.end(), rng);

  std::vector<Vertex> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex a, Vertex b) { return target[a] < target[b]; });

  BterGraph out;
  out.target_degree = target;
  out.community.assign(n, 0);
  std::vector<Edge> edges;
  std::vector<std::size_t> block_degree(n, 0);
  std::bernoulli_distribution coin(0.5);

  // Phases 1 and 2: pack and wire each block.
  std::size_t community = 0;
  for (std::size_t start = 0; start < n; ++community) {
    const std::size_t first_degree = target[by_degree[start]];
    const std::size_t end = std::min(n, start + first_degree + 1);
    const double rho = block_density(config.clustering.at(first_degree));
    coin.param(std::bernoulli_distribution::param_type(rho));
    for (std::size_t i = start; i < end; ++i) {
      out.community[by_degree[i]] = community;
      for (std::size_t j = i + 1; j < end; ++j) {
        if (rho > 0.0 && coin(rng)) {
          edges.emplace_back(by_degree[i], by_degree[j]);
          ++block_degree[by_degree[i]];
          ++block_degree[by_degree[j]];
        }
      }
    }
    start = end;
  }
  out.block_edges = edges.size();

  // Phase 3: Chung-Lu wiring on excess degree. Pairing shuffled stubs links
  // u and v with probability proportional to excess(u) * excess(v) while
  // keeping each degree; loops and repeats are dropped.
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v)
    if (target[v] > block_degree[v]) stubs.insert(stubs.end(), target[v] - block_degree[v], v);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
    if (stubs[i] != stubs[i + 1]) edges.emplace_back(stubs[i], stubs[i + 1]);

  out.graph = Graph::from_edges(n, edges);
  return out;
}

PowerLawFit fit_power_law(const DegreeHistogram& h) {
  if (h.counts.empty()) throw InputError("cannot fit an empty histogram");
  const std::size_t dmax = h.max_degree();
  const double n = static_cast<double>(h.vertex_count());
  double mean_log = 0.0;
  for (auto [d, c] : h.counts) mean_log += static_cast<double>(c) * std::log(static_cast<double>(d));
  mean_log /= n;

  // The likelihood equation is mean_log = E_gamma[ln d], decreasing in gamma.
  auto expected_log = [&](double gamma) {
    double z = 0.0;
    double s = 0.0;
    for (std::size_t d = 1; d <= dmax; ++d) {
      const double w = std::pow(static_cast<double>(d), -gamma);
      z += w;
      s += w * std::log(static_cast<double>(d));
    }
    return s / z;
  };
  double lo = 1.0 + 1e-6;
  double hi = 20.0;
  if (expected_log(lo) <= mean_log) return {lo, dmax};
  if (expected_log(hi) >= mean_log) return {hi, dmax};
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (expected_log(mid) > mean_log ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), dmax};
}

DegreeHistogram shrink_histogram(const DegreeHistogram& h, std::size_t target_n, std::uint64_t seed) {
  if (target_n < 10) throw UsageError("shrink target must be at least 10 vertices");
  const std::size_t n = h.vertex_count();
  if (target_n > n) throw UsageError("shrink target exceeds the histogram's vertex count");

  if (h.counts.size() == 1) {
    const std::size_t d = h.counts.begin()->first;
    if (d >= target_n) throw UsageError("single-degree histogram does not fit in the shrink target");
    std::vector<std::size_t> degrees(target_n, d);
    std::mt19937_64 rng(seed);
    fix_parity(degrees, target_n - 1, rng);
    return to_histogram(degrees);
  }

  auto fit = fit_power_law(h);
  auto model = DegreeModel::power_law(fit.exponent, std::min(fit.max_degree, target_n - 1));
  return sample_degree_histogram(model, target_n, seed);
}

}  // namespace centrank
