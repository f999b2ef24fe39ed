#include "centrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "centrank/corpus.hpp"
#include "centrank/error.hpp"
#include "centrank/eval.hpp"
#include "centrank/features.hpp"
#include "centrank/io.hpp"
#include "centrank/model.hpp"
#include "centrank/parallel.hpp"
#include "centrank/sampling.hpp"

namespace centrank::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::size_t threads = 0;
  bool deterministic = false;
  std::ostream* err = nullptr;
};

// Wall time in ms; zero in deterministic mode so reruns are byte-identical.
class Stopwatch {
 public:
  explicit Stopwatch(const Globals& g) : deterministic_(g.deterministic) {}
  double ms() const {
    if (deterministic_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }
  void restart() { start_ = std::chrono::steady_clock::now(); }

 private:
  bool deterministic_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct EigenFlags {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1000;
  bool shift = false;

  EigenvectorOptions options() const { return {tolerance, max_iterations, shift}; }
};

void add_eigen_flags(CLI::App* cmd, EigenFlags& f) {
  cmd->add_option("--eigen-tol", f.tolerance, "Power-method tolerance on the L1 change")->capture_default_str();
  cmd->add_option("--eigen-max-iter", f.max_iterations, "Power-method iteration cap")->capture_default_str();
  cmd->add_flag("--shift", f.shift, "Iterate with A + I (fixes oscillation on bipartite graphs)");
}

json eigen_json(const EigenvectorOptions& e) {
  return {{"tolerance", e.tolerance}, {"max_iterations", e.max_iterations}, {"shift", e.shift}};
}

void write_run_manifest(const fs::path& path, const Globals& g, const std::string& command, json config,
                        json inputs, json outputs, double wall_ms) {
  json doc = {{"tool", "centrank"},
              {"version", kVersion},
              {"command", command},
              {"config", std::move(config)},
              {"threads", thread_count()},
              {"deterministic", g.deterministic},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)},
              {"wall_time_ms", wall_ms}};
  write_json(path, doc);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
}

// Input graph reduced to its LCC, with the original id of each LCC vertex.
struct WorkingGraph {
  LoadedGraph loaded;
  Subgraph lcc;
  std::vector<std::int64_t> ids;
};

WorkingGraph load_working_graph(const fs::path& path, std::ostream& err) {
  WorkingGraph w;
  w.loaded = load_edge_list(path);
  w.lcc = largest_connected_component(w.loaded.graph);
  w.ids.resize(w.lcc.graph.num_vertices());
  for (std::size_t v = 0; v < w.ids.size(); ++v) w.ids[v] = w.loaded.original_ids[w.lcc.new_to_old[v]];
  if (w.lcc.graph.num_vertices() < w.loaded.graph.num_vertices())
    err << "note: using the largest connected component (" << w.lcc.graph.num_vertices() << " of "
        << w.loaded.graph.num_vertices() << " vertices)\n";
  if (w.lcc.graph.num_vertices() < 2) throw InputError(path.string() + ": largest component has fewer than 2 vertices");
  return w;
}

json graph_json(const WorkingGraph& w) {
  return {{"vertices", w.loaded.graph.num_vertices()},
          {"edges", w.loaded.graph.num_edges()},
          {"lcc_vertices", w.lcc.graph.num_vertices()},
          {"lcc_edges", w.lcc.graph.num_edges()},
          {"self_loops_dropped", w.loaded.stats.self_loops},
          {"duplicates_dropped", w.loaded.stats.duplicates}};
}

void write_mapping(const fs::path& path, const WorkingGraph& w) {
  std::vector<double> index(w.ids.size());
  for (std::size_t v = 0; v < index.size(); ++v) index[v] = static_cast<double>(v);
  write_vertex_csv(path, "lcc_vertex", index, w.ids);
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind = "generic";
  std::optional<std::size_t> count;
  GenericCorpusParams generic;
  std::string reference;
  std::vector<std::size_t> sizes{2000, 3000};
  std::uint64_t seed = 0;
  std::string out;
  bool overwrite = false;
  EigenFlags eigen;
};

void cmd_gen(const GenArgs& a, const Globals& g, CLI::App* cmd, std::ostream& out) {
  Stopwatch clock(g);
  const CorpusKind kind = corpus_kind_from_string(a.kind);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (kind == CorpusKind::generic) {
    for (const char* f : {"--reference", "--sizes"})
      if (given(f)) throw UsageError(std::string(f) + " only applies to --kind specific");
  } else {
    if (a.reference.empty()) throw UsageError("--kind specific requires --reference <edgelist>");
    for (const char* f : {"--size-min", "--size-max", "--clustering-min", "--clustering-max"})
      if (given(f)) throw UsageError(std::string(f) + " only applies to --kind generic");
  }

  const fs::path dir(a.out);
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!a.overwrite) throw UsageError(dir.string() + " is not empty (use --overwrite to replace it)");
    if (!fs::exists(dir / "manifest.json"))
      throw UsageError(dir.string() + " is not a corpus directory; refusing to overwrite");
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().filename().string().rfind("record_", 0) == 0) fs::remove_all(entry.path());
  }

  Corpus corpus;
  json config = {{"kind", a.kind}, {"seed", a.seed}, {"eigenvector", eigen_json(a.eigen.options())}};
  json inputs = json::object();
  if (kind == CorpusKind::generic) {
    GenericCorpusParams p = a.generic;
    if (a.count) p.count = *a.count;
    corpus = make_generic_corpus(p, a.seed, a.eigen.options());
  } else {
    WorkingGraph ref = load_working_graph(a.reference, *g.err);
    SpecificCorpusParams p;
    p.reference_degrees = degree_histogram(ref.lcc.graph);
    p.reference_clustering = clustering_profile(ref.lcc.graph);
    p.sizes = a.sizes;
    if (a.count) p.count_per_size = *a.count;
    p.reference_name = fs::path(a.reference).filename().string();
    corpus = make_specific_corpus(p, a.seed, a.eigen.options());
    inputs["reference"] = a.reference;
  }
  config["params"] = corpus.params;
  write_corpus(corpus, dir);
  std::size_t unconverged = 0;
  for (const auto& r : corpus.records) unconverged += r.exact.eigenvector_converged ? 0 : 1;
  if (unconverged > 0)
    *g.err << "warning: eigenvector iteration did not converge on " << unconverged
              << " records (consider --shift)\n";
  write_run_manifest(dir / "run.json", g, "gen", config, inputs, {{"corpus", a.out}}, clock.ms());
  out << "wrote " << corpus.records.size() << " records to " << a.out << '\n';
}

// ---- exact -----------------------------------------------------------------

struct ExactArgs {
  std::string input;
  std::string out;
  EigenFlags eigen;
};

void cmd_exact(const ExactArgs& a, const Globals& g, std::ostream& out) {
  Stopwatch total(g);
  WorkingGraph w = load_working_graph(a.input, *g.err);
  const fs::path dir(a.out);
  ensure_dir(dir);

  Stopwatch step(g);
  const CentralityVector degree = degree_centrality(w.lcc.graph);
  const double degree_ms = step.ms();
  step.restart();
  const EigenvectorResult eigen = eigenvector_centrality(w.lcc.graph, a.eigen.options());
  const double eigen_ms = step.ms();
  step.restart();
  const PathCentralities paths = betweenness_closeness_exact(w.lcc.graph);
  const double paths_ms = step.ms();
  if (!eigen.converged)
    *g.err << "warning: eigenvector iteration did not converge after " << eigen.iterations
              << " iterations (last change " << eigen.last_change << "); consider --shift\n";

  write_vertex_csv(dir / "degree.csv", "degree", degree.values, w.ids);
  write_vertex_csv(dir / "eigenvector.csv", "eigenvector", eigen.centrality.values, w.ids);
  write_vertex_csv(dir / "betweenness.csv", "betweenness", paths.betweenness.values, w.ids);
  write_vertex_csv(dir / "closeness.csv", "closeness", paths.closeness.values, w.ids);
  write_mapping(dir / "mapping.csv", w);

  json summary = {{"method", "exact"},
                  {"graph", graph_json(w)},
                  {"eigenvector",
                   {{"converged", eigen.converged},
                    {"iterations", eigen.iterations},
                    {"last_change", eigen.last_change},
                    {"options", eigen_json(a.eigen.options())}}},
                  {"timing_ms", {{"degree", degree_ms}, {"eigenvector", eigen_ms}, {"betweenness_closeness", paths_ms}}},
                  {"wall_time_ms", degree_ms + eigen_ms + paths_ms}};
  write_json(dir / "summary.json", summary);
  write_run_manifest(dir / "run.json", g, "exact", {{"eigenvector", eigen_json(a.eigen.options())}},
                     {{"graph", a.input}},
                     {{"dir", a.out},
                      {"files", {"degree.csv", "eigenvector.csv", "betweenness.csv", "closeness.csv", "mapping.csv",
                                 "summary.json"}}},
                     total.ms());
  out << "exact centralities for " << w.lcc.graph.num_vertices() << " vertices written to " << a.out << '\n';
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string input;
  std::string out;
  double fraction = 0.05;
  std::size_t trials = 5;
  std::uint64_t seed = 0;
};

void cmd_sample(const SampleArgs& a, const Globals& g, std::ostream& out) {
  Stopwatch total(g);
  if (a.trials < 1) throw UsageError("--trials must be at least 1");
  if (!(a.fraction > 0 && a.fraction <= 1)) throw UsageError("--fraction must lie in (0, 1]");
  WorkingGraph w = load_working_graph(a.input, *g.err);
  const fs::path dir(a.out);
  ensure_dir(dir);

  json trials = json::array();
  json files = json::array();
  double sum_ms = 0.0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + t;
    Stopwatch step(g);
    const SamplePlan plan = make_plan(w.lcc.graph, a.fraction, seed);
    const PathCentralities est = approximate_centralities(w.lcc.graph, plan);
    const double ms = step.ms();
    sum_ms += ms;
    const std::string suffix = "_trial" + std::to_string(t) + ".csv";
    write_vertex_csv(dir / ("betweenness" + suffix), "betweenness", est.betweenness.values, w.ids);
    write_vertex_csv(dir / ("closeness" + suffix), "closeness", est.closeness.values, w.ids);
    files.push_back("betweenness" + suffix);
    files.push_back("closeness" + suffix);
    trials.push_back({{"trial", t}, {"seed", seed}, {"pivots", plan.pivots.size()}, {"wall_time_ms", ms}});
  }
  write_mapping(dir / "mapping.csv", w);
  json summary = {{"method", "sampling"},
                  {"fraction", a.fraction},
                  {"seed", a.seed},
                  {"graph", graph_json(w)},
                  {"trials", trials},
                  {"wall_time_ms", sum_ms / static_cast<double>(a.trials)}};
  write_json(dir / "summary.json", summary);
  files.push_back("mapping.csv");
  files.push_back("summary.json");
  write_run_manifest(dir / "run.json", g, "sample", {{"fraction", a.fraction}, {"trials", a.trials}, {"seed", a.seed}},
                     {{"graph", a.input}}, {{"dir", a.out}, {"files", files}}, total.ms());
  out << a.trials << " sampling trials (" << trials[0]["pivots"].get<std::size_t>() << " pivots each) written to "
      << a.out << '\n';
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  std::string out;
  int attrs = 2;
  int tasks = 1;
  std::string target = "betweenness";
  std::string split = "rows";
  std::vector<std::size_t> hidden{20, 20, 20};
  LmConfig lm;
  std::string history;
  std::string features;
};

json split_metrics(const Mlp& m, const Dataset& d, std::span<const Measure> targets) {
  json out = json::object();
  out["rows"] = d.rows();
  if (d.rows() < 2) return out;
  const RowMatrix pred = m.forward(d.x);
  out["sse"] = sum_squared_error(m, d.x, d.y);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::vector<double> p(d.rows());
    std::vector<double> y(d.rows());
    for (std::size_t r = 0; r < d.rows(); ++r) {
      p[r] = pred(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
      y[r] = d.y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
    }
    try {
      out["r2_" + std::string(to_string(targets[t]))] = r_squared(p, y);
    } catch (const InputError&) {
      // constant target on a tiny split
    }
  }
  return out;
}

void cmd_train(TrainArgs a, const Globals& g, CLI::App* cmd, std::ostream& out) {
  Stopwatch total(g);
  if (a.attrs != 2 && a.attrs != 3) throw UsageError("--attrs must be 2 or 3");
  if (a.tasks != 1 && a.tasks != 2) throw UsageError("--tasks must be 1 or 2");
  if (a.tasks == 2 && cmd->count("--target") > 0) throw UsageError("--target only applies to --tasks 1");
  if (a.split != "rows" && a.split != "networks") throw UsageError("--split must be 'rows' or 'networks'");
  if (a.hidden.empty()) throw UsageError("--hidden needs at least one layer size");
  a.lm.validate();

  std::vector<Measure> targets;
  if (a.tasks == 2) {
    targets = {Measure::betweenness, Measure::closeness};
  } else {
    const Measure m = measure_from_string(a.target);
    if (m != Measure::betweenness && m != Measure::closeness)
      throw UsageError("--target must be betweenness or closeness");
    targets = {m};
  }

  const Corpus corpus = read_corpus(a.corpus);
  if (corpus.records.empty()) throw InputError(a.corpus + " holds no records");

  std::vector<FeatureMatrix> parts;
  std::size_t rows = 0;
  for (const auto& r : corpus.records) {
    parts.push_back(build_features(r.graph, r.exact, a.attrs, targets));
    rows += parts.back().rows();
  }
  Dataset all;
  all.x.resize(static_cast<Eigen::Index>(rows), a.attrs);
  all.y.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(targets.size()));
  std::vector<std::size_t> group(rows);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto n = static_cast<Eigen::Index>(parts[i].rows());
    all.x.middleRows(static_cast<Eigen::Index>(offset), n) = parts[i].x;
    all.y.middleRows(static_cast<Eigen::Index>(offset), n) = parts[i].y;
    std::fill(group.begin() + static_cast<std::ptrdiff_t>(offset),
              group.begin() + static_cast<std::ptrdiff_t>(offset) + n, i);
    offset += static_cast<std::size_t>(n);
  }
  if (!a.features.empty()) {
    std::ofstream f(a.features);
    if (!f) throw InputError("cannot write " + a.features);
    FeatureMatrix pooled{parts.front().inputs, parts.front().targets, all.x, all.y};
    write_features_csv(pooled, f);
  }

  const DataSplit split = a.split == "rows" ? split_rows(rows, a.lm) : split_groups(group, a.lm);
  const Dataset train = all.subset(split.train);
  const Dataset validation = all.subset(split.validation);
  const Dataset test = all.subset(split.test);

  std::vector<std::size_t> sizes{static_cast<std::size_t>(a.attrs)};
  sizes.insert(sizes.end(), a.hidden.begin(), a.hidden.end());
  sizes.push_back(targets.size());
  Stopwatch train_clock(g);
  TrainResult result = train_lm(Mlp::init(sizes, a.lm.seed), train, validation, a.lm);
  const double train_ms = train_clock.ms();

  Model model;
  model.mlp = std::move(result.model);
  ModelInfo& info = model.info;
  std::size_t size_code = 0;
  if (corpus.kind == CorpusKind::specific)
    for (const auto& s : corpus.params.at("sizes")) size_code = std::max(size_code, s.get<std::size_t>());
  info.name = model_code(corpus.kind == CorpusKind::specific, size_code, a.attrs, targets.size());
  info.attributes = a.attrs;
  info.targets = targets;
  info.corpus = fs::path(a.corpus).lexically_normal().filename().string() + ":" +
                std::string(to_string(corpus.kind)) + ":" + std::to_string(corpus.seed);
  info.eigen = corpus.eigen;
  info.training = a.lm;
  json metrics = {{"train", split_metrics(model.mlp, train, targets)},
                  {"validation", split_metrics(model.mlp, validation, targets)},
                  {"test", split_metrics(model.mlp, test, targets)}};
  for (const auto& [part, m] : metrics.items())
    for (const auto& [k, v] : m.items())
      if (k.rfind("r2_", 0) == 0) info.metrics[part + "_" + k] = v.get<double>();
  info.metrics["epochs"] = static_cast<double>(result.history.epochs.size() - 1);
  info.metrics["best_epoch"] = static_cast<double>(result.history.best_epoch);
  save_model(model, a.out);
  if (!a.history.empty()) write_history_csv(result.history, a.history);

  json outputs = {{"model", a.out}};
  if (!a.history.empty()) outputs["history"] = a.history;
  if (!a.features.empty()) outputs["features"] = a.features;
  json config = {{"attrs", a.attrs},
                 {"tasks", a.tasks},
                 {"targets", json::array()},
                 {"split", a.split},
                 {"hidden", a.hidden},
                 {"mu", a.lm.mu_init},
                 {"mu_decrease", a.lm.mu_decrease},
                 {"mu_increase", a.lm.mu_increase},
                 {"mu_max", a.lm.mu_max},
                 {"max_epochs", a.lm.max_epochs},
                 {"patience", a.lm.patience},
                 {"max_retries", a.lm.max_retries},
                 {"val_fraction", a.lm.val_fraction},
                 {"test_fraction", a.lm.test_fraction},
                 {"seed", a.lm.seed}};
  for (Measure m : targets) config["targets"].push_back(std::string(to_string(m)));
  json run_outputs = outputs;
  run_outputs["metrics"] = metrics;
  run_outputs["stop_reason"] = result.history.stop_reason;
  run_outputs["training_ms"] = train_ms;
  fs::path manifest(a.out);
  manifest.replace_extension(".run.json");
  write_run_manifest(manifest, g, "train", config, {{"corpus", a.corpus}}, run_outputs, total.ms());

  out << info.name << ": " << rows << " rows (" << train.rows() << " train), " << info.metrics["epochs"]
      << " epochs, stopped on " << result.history.stop_reason << '\n';
  for (const auto& [k, v] : metrics["test"].items())
    if (k.rfind("r2_", 0) == 0) out << "  test " << k << " = " << v.get<double>() << '\n';
}

// ---- predict ---------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string input;
  std::string out;
  std::optional<int> attrs;
};

void cmd_predict(const PredictArgs& a, const Globals& g, std::ostream& out) {
  Stopwatch total(g);
  const Model model = load_model(a.model);
  WorkingGraph w = load_working_graph(a.input, *g.err);
  const fs::path dir(a.out);
  ensure_dir(dir);

  Stopwatch step(g);
  const Prediction p = predict_ranks(model, w.lcc.graph, a.attrs.value_or(model.info.attributes));
  const double ms = step.ms();
  json files = json::array();
  for (std::size_t t = 0; t < p.targets.size(); ++t) {
    const std::string name = std::string(to_string(p.targets[t])) + ".csv";
    write_vertex_csv(dir / name, "rank", p.ranks[t].ranks, w.ids);
    files.push_back(name);
  }
  write_mapping(dir / "mapping.csv", w);
  json targets = json::array();
  for (Measure m : p.targets) targets.push_back(std::string(to_string(m)));
  write_json(dir / "summary.json", {{"method", model.info.name},
                                    {"model", a.model},
                                    {"targets", targets},
                                    {"graph", graph_json(w)},
                                    {"wall_time_ms", ms}});
  files.push_back("mapping.csv");
  files.push_back("summary.json");
  write_run_manifest(dir / "run.json", g, "predict", {{"attrs", a.attrs.value_or(model.info.attributes)}},
                     {{"model", a.model}, {"graph", a.input}}, {{"dir", a.out}, {"files", files}}, total.ms());
  out << model.info.name << " ranks for " << w.lcc.graph.num_vertices() << " vertices written to " << a.out << '\n';
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string exact;
  std::vector<std::string> methods;
  std::vector<std::string> measures{"betweenness", "closeness"};
  std::vector<double> percentiles = default_percentile_grid();
  std::string out;
  std::string table;
};

// Values of `t` reordered to follow `order` (vertex id -> position).
std::vector<double> aligned(const VertexTable& t, const std::string& column,
                            const std::map<std::int64_t, std::size_t>& order, const fs::path& path) {
  if (t.ids.size() != order.size())
    throw InputError(path.string() + " has " + std::to_string(t.ids.size()) + " vertices, exact has " +
                     std::to_string(order.size()));
  std::vector<double> out(order.size());
  std::vector<bool> seen(order.size(), false);
  const auto& values = t.column(column);
  for (std::size_t r = 0; r < t.ids.size(); ++r) {
    auto it = order.find(t.ids[r]);
    if (it == order.end() || seen[it->second])
      throw InputError(path.string() + ": vertex " + std::to_string(t.ids[r]) + " does not match the exact vertex set");
    seen[it->second] = true;
    out[it->second] = values[r];
  }
  return out;
}

// Ranks from a method file: a `rank` column is used as is, any other value
// column is a score (higher is more central).
RankVector method_ranks(const fs::path& path, const std::map<std::int64_t, std::size_t>& order) {
  const VertexTable t = read_vertex_csv(path);
  if (t.columns.size() != 2) throw InputError(path.string() + ": expected two columns");
  const std::string& col = t.columns[1];
  auto values = aligned(t, col, order, path);
  if (col == "rank") return RankVector{std::move(values)};
  return rank_vertices(values);
}

void cmd_eval(const EvalArgs& a, const Globals& g, std::ostream& out) {
  Stopwatch total(g);
  if (a.methods.empty()) throw UsageError("at least one --method is required");
  const fs::path exact_dir(a.exact);

  std::vector<Measure> measures;
  for (const auto& m : a.measures) measures.push_back(measure_from_string(m));

  std::map<Measure, CentralityVector> exact;
  std::map<std::int64_t, std::size_t> order;
  for (Measure m : measures) {
    const fs::path path = exact_dir / (std::string(to_string(m)) + ".csv");
    if (!fs::exists(path)) throw InputError("missing exact scores " + path.string());
    const VertexTable t = read_vertex_csv(path);
    if (order.empty()) {
      for (std::size_t r = 0; r < t.ids.size(); ++r)
        if (!order.emplace(t.ids[r], order.size()).second)
          throw InputError(path.string() + ": duplicate vertex " + std::to_string(t.ids[r]));
    }
    exact[m] = CentralityVector{m, aligned(t, std::string(to_string(m)), order, path)};
  }
  if (order.size() < 2) throw InputError("exact scores need at least two vertices");

  std::vector<MethodResult> methods;
  json inputs = {{"exact", a.exact}, {"methods", json::object()}};
  for (const auto& spec : a.methods) {
    const auto eq = spec.find('=');
    MethodResult mr;
    const fs::path dir = eq == std::string::npos ? fs::path(spec) : fs::path(spec.substr(eq + 1));
    mr.name = eq == std::string::npos ? dir.lexically_normal().filename().string() : spec.substr(0, eq);
    if (!fs::is_directory(dir)) throw InputError("method directory " + dir.string() + " does not exist");
    inputs["methods"][mr.name] = dir.string();
    if (fs::exists(dir / "summary.json")) mr.wall_time_ms = read_json(dir / "summary.json").value("wall_time_ms", 0.0);

    for (Measure m : measures) {
      const std::string base(to_string(m));
      std::vector<RankVector> trials;
      if (fs::exists(dir / (base + ".csv"))) {
        trials.push_back(method_ranks(dir / (base + ".csv"), order));
      } else {
        for (std::size_t t = 0; fs::exists(dir / (base + "_trial" + std::to_string(t) + ".csv")); ++t)
          trials.push_back(method_ranks(dir / (base + "_trial" + std::to_string(t) + ".csv"), order));
      }
      if (!trials.empty()) mr.trials[m] = std::move(trials);
    }
    if (mr.trials.empty()) throw InputError("method directory " + dir.string() + " has no score files");
    methods.push_back(std::move(mr));
  }

  const auto reports = compare_report(exact, methods, a.percentiles);
  const std::string table = reports_to_table(reports);
  out << table;
  json outputs = json::object();
  if (!a.out.empty()) {
    write_json(a.out, reports_to_json(reports));
    outputs["report"] = a.out;
  }
  if (!a.table.empty()) {
    write_text(a.table, table);
    outputs["table"] = a.table;
  }
  if (!a.out.empty()) {
    fs::path manifest(a.out);
    manifest.replace_extension(".run.json");
    write_run_manifest(manifest, g, "eval", {{"measures", a.measures}, {"percentiles", a.percentiles}}, inputs,
                       outputs, total.ms());
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 4;
  return 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Centrality ranking: exact, sampled and neural-network estimates"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Globals globals;
  globals.err = &err;
  app.add_option("--threads", globals.threads, "Worker threads (0 = runtime default)")->envname("CENTRANK_THREADS");
  app.add_flag("--deterministic", globals.deterministic, "Single-threaded reductions and zeroed wall times");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a BTER training corpus with exact targets");
  gen_cmd->add_option("--kind", gen.kind, "generic or specific")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Networks (generic, default 300) or networks per size (specific, default 400)");
  gen_cmd->add_option("--size-min", gen.generic.size_min)->capture_default_str();
  gen_cmd->add_option("--size-max", gen.generic.size_max)->capture_default_str();
  gen_cmd->add_option("--clustering-min", gen.generic.clustering_min)->capture_default_str();
  gen_cmd->add_option("--clustering-max", gen.generic.clustering_max)->capture_default_str();
  gen_cmd->add_option("--reference", gen.reference, "Reference edge list (specific corpora)");
  gen_cmd->add_option("--sizes", gen.sizes, "Network sizes (specific corpora)")->delimiter(',')->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Corpus directory")->required();
  gen_cmd->add_flag("--overwrite", gen.overwrite, "Replace an existing corpus directory");
  add_eigen_flags(gen_cmd, gen.eigen);

  ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "Exact degree, eigenvector, betweenness and closeness");
  exact_cmd->add_option("--input", exact.input, "Edge list")->required();
  exact_cmd->add_option("--out", exact.out, "Output directory")->required();
  add_eigen_flags(exact_cmd, exact.eigen);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Pivot-sampled betweenness and closeness");
  sample_cmd->add_option("--input", sample.input, "Edge list")->required();
  sample_cmd->add_option("--out", sample.out, "Output directory")->required();
  sample_cmd->add_option("--fraction,--sample-fraction", sample.fraction, "Share of vertices used as pivots")
      ->capture_default_str();
  sample_cmd->add_option("--trials", sample.trials)->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Trial t uses seed + t")->capture_default_str();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a ranking network on a corpus with Levenberg-Marquardt");
  train_cmd->add_option("--corpus", train.corpus, "Corpus directory")->required();
  train_cmd->add_option("--out", train.out, "Model file (JSON)")->required();
  train_cmd->add_option("--attrs", train.attrs, "Input attributes: 2 (degree, eigenvector) or 3 (+ second-level degree)")
      ->capture_default_str();
  train_cmd->add_option("--tasks", train.tasks, "1 (single target) or 2 (betweenness and closeness)")
      ->capture_default_str();
  train_cmd->add_option("--target", train.target, "Target for --tasks 1")->capture_default_str();
  train_cmd->add_option("--split", train.split, "rows (pooled vertex rows) or networks (whole records)")
      ->capture_default_str();
  train_cmd->add_option("--hidden", train.hidden, "Hidden layer sizes")->delimiter(',')->capture_default_str();
  train_cmd->add_option("--mu", train.lm.mu_init)->capture_default_str();
  train_cmd->add_option("--mu-decrease", train.lm.mu_decrease)->capture_default_str();
  train_cmd->add_option("--mu-increase", train.lm.mu_increase)->capture_default_str();
  train_cmd->add_option("--mu-max", train.lm.mu_max)->capture_default_str();
  train_cmd->add_option("--max-epochs", train.lm.max_epochs)->capture_default_str();
  train_cmd->add_option("--patience", train.lm.patience)->capture_default_str();
  train_cmd->add_option("--max-retries", train.lm.max_retries)->capture_default_str();
  train_cmd->add_option("--val-fraction", train.lm.val_fraction)->capture_default_str();
  train_cmd->add_option("--test-fraction", train.lm.test_fraction)->capture_default_str();
  train_cmd->add_option("--seed", train.lm.seed)->capture_default_str();
  train_cmd->add_option("--history", train.history, "Write per-epoch history CSV");
  train_cmd->add_option("--features", train.features, "Write the pooled feature matrix CSV");

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "Rank vertices with a trained model");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--input", predict.input, "Edge list")->required();
  predict_cmd->add_option("--out", predict.out, "Output directory")->required();
  predict_cmd->add_option("--attrs", predict.attrs, "Must match the model (defaults to it)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compare method rankings against exact scores");
  eval_cmd->add_option("--exact", eval.exact, "Directory written by `exact`")->required();
  eval_cmd->add_option("--method", eval.methods, "name=dir of a sample or predict run (repeatable)")->required();
  eval_cmd->add_option("--measures", eval.measures)->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--percentiles", eval.percentiles)->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report JSON");
  eval_cmd->add_option("--table", eval.table, "Report table (text)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (globals.deterministic) {
      set_thread_count(1);
    } else if (globals.threads > 0) {
      set_thread_count(globals.threads);
    }
    if (*gen_cmd) cmd_gen(gen, globals, gen_cmd, out);
    if (*exact_cmd) cmd_exact(exact, globals, out);
    if (*sample_cmd) cmd_sample(sample, globals, out);
    if (*train_cmd) cmd_train(train, globals, train_cmd, out);
    if (*predict_cmd) cmd_predict(predict, globals, out);
    if (*eval_cmd) cmd_eval(eval, globals, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"centrank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace centrank::cli
