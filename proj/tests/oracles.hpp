#pragma once

// Slow reference computations used only to check the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "centrank/graph.hpp"
#include "centrank/neural.hpp"

namespace centrank::oracle {

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

/// Floyd-Warshall hop distances.
inline std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (Vertex v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (Vertex w : g.neighbors(v)) d[v][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// 1 / sum of distances.
inline std::vector<double> closeness(const Graph& g) {
  auto d = all_pairs_distances(g);
  std::vector<double> c(g.num_vertices());
  for (std::size_t v = 0; v < c.size(); ++v) {
    double s = 0;
    for (auto x : d[v]) s += x;
    c[v] = 1.0 / s;
  }
  return c;
}

/// Betweenness over unordered pairs by listing every shortest path.
inline std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.num_vertices();
  auto d = all_pairs_distances(g);
  std::vector<double> b(n, 0.0);
  std::vector<Vertex> path;
  std::vector<std::size_t> through(n);
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = s + 1; t < n; ++t) {
      std::fill(through.begin(), through.end(), 0);
      std::size_t paths = 0;
      // Walks of length d(s,t) that reach t are exactly the shortest paths.
      std::function<void(Vertex, std::uint32_t)> walk = [&](Vertex v, std::uint32_t left) {
        if (left == 0) {
          if (v == t) {
            ++paths;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) ++through[path[i]];
          }
          return;
        }
        for (Vertex w : g.neighbors(v)) {
          if (d[w][t] != left - 1) continue;
          path.push_back(w);
          walk(w, left - 1);
          path.pop_back();
        }
      };
      path.assign(1, s);
      walk(s, d[s][t]);
      for (Vertex v = 0; v < n; ++v) b[v] += static_cast<double>(through[v]) / static_cast<double>(paths);
    }
  }
  return b;
}

/// Dense power iteration on A (+ I when shifted), L1 normalized.
inline std::vector<double> eigenvector(const Graph& g, bool shift, double tol = 1e-15, int max_iter = 200000) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  if (shift) a += Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = a * x;
    next /= next.sum();
    const double change = (next - x).lpNorm<1>();
    x = next;
    if (change < tol) break;
  }
  return {x.data(), x.data() + n};
}

/// Perron vector from a symmetric eigensolver, L1 normalized.
inline std::vector<double> perron_vector(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd x = es.eigenvectors().col(n - 1);
  if (x.sum() < 0) x = -x;
  x /= x.sum();
  return {x.data(), x.data() + n};
}

/// Kendall tau-b by checking all pairs.
inline std::optional<double> tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0 && db == 0) {
        ++ties_a, ++ties_b;
      } else if (da == 0) {
        ++ties_a;
      } else if (db == 0) {
        ++ties_b;
      } else if ((da > 0) == (db > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  const long long total = static_cast<long long>(a.size()) * static_cast<long long>(a.size() - 1) / 2;
  const double denom = std::sqrt(static_cast<double>(total - ties_a) * static_cast<double>(total - ties_b));
  if (denom == 0) return std::nullopt;
  return static_cast<double>(concordant - discordant) / denom;
}

/// Central-difference Jacobian of the residual (prediction - target).
inline Eigen::MatrixXd finite_difference_jacobian(const Mlp& m, const RowMatrix& x, double h = 1e-6) {
  const auto rows = x.rows() * static_cast<Eigen::Index>(m.output_dim());
  const auto params = static_cast<Eigen::Index>(m.parameter_count());
  Eigen::MatrixXd j(rows, params);
  std::vector<double> p(m.parameters().begin(), m.parameters().end());
  Mlp probe = m;
  for (Eigen::Index c = 0; c < params; ++c) {
    const double keep = p[c];
    p[c] = keep + h;
    probe.set_parameters(p);
    RowMatrix up = probe.forward(x);
    p[c] = keep - h;
    probe.set_parameters(p);
    RowMatrix down = probe.forward(x);
    p[c] = keep;
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index o = 0; o < up.cols(); ++o) j(r * up.cols() + o, c) = (up(r, o) - down(r, o)) / (2 * h);
  }
  return j;
}

}  // namespace centrank::oracle
