#include "centrank/model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "centrank/error.hpp"
#include "centrank/features.hpp"
#include "centrank/io.hpp"

namespace centrank {

using nlohmann::json;

nlohmann::json model_to_json(const Model& model) {
  const Mlp& m = model.mlp;
  json doc;
  doc["version"] = kModelFormatVersion;
  doc["layer_sizes"] = m.layer_sizes();
  json acts = json::array();
  for (Activation a : m.activations()) acts.push_back(std::string(to_string(a)));
  doc["activations"] = acts;
  json weights = json::array();
  json biases = json::array();
  auto p = m.parameters();
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    weights.push_back(std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(m.weight_offset(l)),
                                          p.begin() + static_cast<std::ptrdiff_t>(m.bias_offset(l))));
    biases.push_back(std::vector<double>(
        p.begin() + static_cast<std::ptrdiff_t>(m.bias_offset(l)),
        p.begin() + static_cast<std::ptrdiff_t>(m.bias_offset(l) + m.layer_sizes()[l + 1])));
  }
  doc["weights"] = weights;
  doc["biases"] = biases;

  const ModelInfo& info = model.info;
  json targets = json::array();
  for (Measure t : info.targets) targets.push_back(std::string(to_string(t)));
  const LmConfig& lm = info.training;
  doc["metadata"] = {
      {"name", info.name},
      {"attributes", info.attributes},
      {"tasks", info.targets.size()},
      {"targets", targets},
      {"corpus", info.corpus},
      {"eigenvector", {{"tolerance", info.eigen.tolerance},
                       {"max_iterations", info.eigen.max_iterations},
                       {"shift", info.eigen.shift}}},
      {"training", {{"mu_init", lm.mu_init},
                    {"mu_decrease", lm.mu_decrease},
                    {"mu_increase", lm.mu_increase},
                    {"mu_max", lm.mu_max},
                    {"max_epochs", lm.max_epochs},
                    {"patience", lm.patience},
                    {"val_fraction", lm.val_fraction},
                    {"test_fraction", lm.test_fraction},
                    {"seed", lm.seed}}},
      {"metrics", info.metrics},
  };
  return doc;
}

Model model_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.contains("version")) throw InputError("model file has no version tag");
    if (doc.at("version").get<int>() != kModelFormatVersion)
      throw InputError("unsupported model version " + doc.at("version").dump());

    auto sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
    std::vector<Activation> acts;
    for (const auto& a : doc.at("activations")) acts.push_back(activation_from_string(a.get<std::string>()));
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    if (sizes.size() < 2 || weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1)
      throw InputError("model layer arrays are inconsistent");
    std::vector<double> params;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      auto w = weights[l].get<std::vector<double>>();
      auto b = biases[l].get<std::vector<double>>();
      if (w.size() != sizes[l] * sizes[l + 1] || b.size() != sizes[l + 1])
        throw InputError("model layer " + std::to_string(l) + " has the wrong number of parameters");
      params.insert(params.end(), w.begin(), w.end());
      params.insert(params.end(), b.begin(), b.end());
    }

    Model model;
    model.mlp = Mlp::from_parameters(std::move(sizes), std::move(acts), std::move(params));
    const auto& meta = doc.at("metadata");
    ModelInfo& info = model.info;
    info.name = meta.at("name").get<std::string>();
    info.attributes = meta.at("attributes").get<int>();
    info.targets.clear();
    for (const auto& t : meta.at("targets")) info.targets.push_back(measure_from_string(t.get<std::string>()));
    info.corpus = meta.value("corpus", "");
    const auto& ev = meta.at("eigenvector");
    info.eigen.tolerance = ev.at("tolerance").get<double>();
    info.eigen.max_iterations = ev.at("max_iterations").get<std::size_t>();
    info.eigen.shift = ev.at("shift").get<bool>();
    if (meta.contains("training")) {
      const auto& t = meta.at("training");
      info.training.mu_init = t.at("mu_init").get<double>();
      info.training.mu_decrease = t.at("mu_decrease").get<double>();
      info.training.mu_increase = t.at("mu_increase").get<double>();
      info.training.mu_max = t.at("mu_max").get<double>();
      info.training.max_epochs = t.at("max_epochs").get<std::size_t>();
      info.training.patience = t.at("patience").get<std::size_t>();
      info.training.val_fraction = t.at("val_fraction").get<double>();
      info.training.test_fraction = t.at("test_fraction").get<double>();
      info.training.seed = t.at("seed").get<std::uint64_t>();
    }
    if (meta.contains("metrics")) info.metrics = meta.at("metrics").get<std::map<std::string, double>>();

    if (static_cast<std::size_t>(info.attributes) != model.mlp.input_dim())
      throw InputError("model attribute count does not match its input layer");
    if (info.targets.size() != model.mlp.output_dim())
      throw InputError("model target list does not match its output layer");
    return model;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  } catch (const UsageError& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) { write_json(path, model_to_json(model)); }

Model load_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

std::string model_code(bool specific, std::size_t training_size, int attributes, std::size_t tasks) {
  if (!specific) return "NN";
  return "NN" + std::to_string(training_size / 1000) + std::to_string(attributes) + std::to_string(tasks);
}

RankVector ranks_from_predictions(std::span<const double> predicted) {
  std::vector<std::size_t> order(predicted.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return predicted[a] < predicted[b]; });
  RankVector r{std::vector<double>(predicted.size())};
  for (std::size_t i = 0; i < order.size(); ++i) r.ranks[order[i]] = static_cast<double>(i + 1);
  return r;
}

Prediction predict_ranks(const Model& model, const Graph& g, int attributes) {
  if (attributes != model.info.attributes)
    throw InputError("model was trained with " + std::to_string(model.info.attributes) +
                     " attributes, prediction requested " + std::to_string(attributes));
  auto degree = degree_centrality(g);
  auto eigen = eigenvector_centrality(g, model.info.eigen);
  RowMatrix x = build_inputs(g, degree, eigen.centrality, attributes);
  RowMatrix out = model.mlp.forward(x);

  Prediction p;
  p.targets = model.info.targets;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    std::vector<double> col(static_cast<std::size_t>(out.rows()));
    for (Eigen::Index r = 0; r < out.rows(); ++r) col[static_cast<std::size_t>(r)] = out(r, c);
    p.ranks.push_back(ranks_from_predictions(col));
    p.scores.push_back(std::move(col));
  }
  return p;
}

}  // namespace centrank
