#include "centrank/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "centrank/error.hpp"

namespace centrank {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  std::vector<Vertex> raw(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  // Sort and dedupe each list, then compact.
  std::vector<std::size_t> offsets(n + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) raw[out++] = *it;
    offsets[v + 1] = out;
  }
  raw.resize(out);
  raw.shrink_to_fit();
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(raw);
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

bool parse_id(std::string_view token, std::int64_t& value) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size() && value >= 0;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
  LoadedGraph result;
  std::unordered_map<std::int64_t, Vertex> ids;
  std::vector<Edge> edges;
  auto intern = [&](std::int64_t id) {
    auto [it, inserted] = ids.try_emplace(id, static_cast<Vertex>(result.original_ids.size()));
    if (inserted) result.original_ids.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
    if (tokens.size() != 2)
      throw InputError("line " + std::to_string(line_no) + ": expected two vertex ids, got " +
                       std::to_string(tokens.size()) + " tokens");
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_id(tokens[0], a) || !parse_id(tokens[1], b))
      throw InputError("line " + std::to_string(line_no) + ": vertex ids must be non-negative integers");
    ++result.stats.edge_lines;
    Vertex u = intern(a);
    Vertex v = intern(b);
    if (u == v) {
      ++result.stats.self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  result.stats.lines = line_no;
  if (result.stats.edge_lines == 0) throw InputError("edge list is empty");

  result.graph = Graph::from_edges(result.original_ids.size(), edges);
  result.stats.duplicates = edges.size() - result.graph.num_edges();
  return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list " + path.string());
  return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  const std::size_t n = g.num_vertices();
  // First pass: introduce vertices in id order, each by an edge to an
  // already-seen vertex or as the pair (v, v+1).
  std::vector<Edge> order;
  std::vector<bool> seen(n, false);
  bool canonical = true;
  for (Vertex v = 0; v < n && canonical; ++v) {
    if (seen[v]) continue;
    auto nb = g.neighbors(v);
    auto back = std::find_if(nb.begin(), nb.end(), [&](Vertex u) { return seen[u]; });
    if (back != nb.end()) {
      order.emplace_back(v, *back);
    } else if (v + 1 < n && g.has_edge(v, v + 1)) {
      order.emplace_back(v, v + 1);
      seen[v + 1] = true;
    } else {
      canonical = false;
    }
    seen[v] = true;
  }
  if (!canonical) order.clear();

  std::vector<Edge> used;
  used.reserve(order.size());
  for (auto [u, v] : order) used.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(used.begin(), used.end());
  std::vector<Edge> rest;
  for (const Edge& e : g.edges())
    if (!std::binary_search(used.begin(), used.end(), e)) rest.push_back(e);
  for (auto [u, v] : order) out << u << ' ' << v << '\n';
  for (auto [u, v] : rest) out << u << ' ' << v << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_edge_list(g, out);
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  Subgraph sub;
  sub.new_to_old.assign(keep.begin(), keep.end());
  std::sort(sub.new_to_old.begin(), sub.new_to_old.end());
  sub.new_to_old.erase(std::unique(sub.new_to_old.begin(), sub.new_to_old.end()), sub.new_to_old.end());
  sub.old_to_new.assign(g.num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < sub.new_to_old.size(); ++i)
    sub.old_to_new[sub.new_to_old[i]] = static_cast<Vertex>(i);

  std::vector<Edge> edges;
  for (Vertex old_u : sub.new_to_old)
    for (Vertex old_v : g.neighbors(old_u))
      if (old_u < old_v && sub.old_to_new[old_v] != kNoVertex)
        edges.emplace_back(sub.old_to_new[old_u], sub.old_to_new[old_v]);
  sub.graph = Graph::from_edges(sub.new_to_old.size(), edges);
  return sub;
}

std::vector<Vertex> component_labels(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> label(n, kNoVertex);
  std::vector<Vertex> queue;
  queue.reserve(n);
  Vertex next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != kNoVertex) continue;
    queue.clear();
    queue.push_back(s);
    label[s] = next;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Vertex w : g.neighbors(queue[head]))
        if (label[w] == kNoVertex) {
          label[w] = next;
          queue.push_back(w);
        }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](Vertex l) { return l == 0; });
}

Subgraph largest_connected_component(const Graph& g) {
  auto labels = component_labels(g);
  std::vector<std::size_t> sizes;
  for (Vertex l : labels) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  // Labels are assigned in order of smallest member, so the first maximum wins ties.
  Vertex best = static_cast<Vertex>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < labels.size(); ++v)
    if (labels[v] == best) keep.push_back(v);
  return induced_subgraph(g, keep);
}

std::size_t DegreeHistogram::vertex_count() const {
  std::size_t total = 0;
  for (auto [d, c] : counts) total += c;
  return total;
}

std::size_t DegreeHistogram::degree_sum() const {
  std::size_t total = 0;
  for (auto [d, c] : counts) total += d * c;
  return total;
}

std::vector<std::size_t> DegreeHistogram::degree_sequence() const {
  std::vector<std::size_t> seq;
  seq.reserve(vertex_count());
  for (auto [d, c] : counts) seq.insert(seq.end(), c, d);
  return seq;
}

DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram h;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (auto d = g.degree(v); d > 0) ++h.counts[d];
  return h;
}

double total_variation(const DegreeHistogram& a, const DegreeHistogram& b) {
  const double na = static_cast<double>(a.vertex_count());
  const double nb = static_cast<double>(b.vertex_count());
  if (na == 0 || nb == 0) throw InputError("total variation of an empty histogram");
  std::map<std::size_t, double> diff;
  for (auto [d, c] : a.counts) diff[d] += static_cast<double>(c) / na;
  for (auto [d, c] : b.counts) diff[d] -= static_cast<double>(c) / nb;
  double sum = 0.0;
  for (auto [d, x] : diff) sum += std::abs(x);
  return 0.5 * sum;
}

std::vector<std::size_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> tri(n, 0);
  // Each triangle u < v < w found once through sorted-list intersection.
  for (Vertex u = 0; u < n; ++u) {
    auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++tri[u];
          ++tri[v];
          ++tri[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return tri;
}

std::vector<double> local_clustering(const Graph& g) {
  auto tri = triangle_counts(g);
  std::vector<double> cc(g.num_vertices(), 0.0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d >= 2) cc[v] = static_cast<double>(tri[v]) / (d * (d - 1) / 2);
  }
  return cc;
}

ClusteringProfile clustering_profile(const Graph& g) {
  ClusteringProfile profile;
  const std::size_t n = g.num_vertices();
  if (n == 0) return profile;
  auto cc = local_clustering(g);
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  double total = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    total += cc[v];
    if (g.degree(v) >= 2) {
      auto& [sum, count] = acc[g.degree(v)];
      sum += cc[v];
      ++count;
    }
  }
  profile.global = total / static_cast<double>(n);
  for (auto [d, sc] : acc) profile.per_degree[d] = sc.first / static_cast<double>(sc.second);
  return profile;
}

}  // namespace centrank
