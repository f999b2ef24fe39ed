#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "centrank/centrality.hpp"
#include "centrank/graph.hpp"
#include "centrank/neural.hpp"

namespace centrank {

inline constexpr int kModelFormatVersion = 1;

/// What a trained network was trained on, so it can be applied consistently.
struct ModelInfo {
  std::string name = "NN";
  int attributes = 2;
  std::vector<Measure> targets{Measure::betweenness};
  std::string corpus;
  EigenvectorOptions eigen;
  LmConfig training;
  std::map<std::string, double> metrics;
};

struct Model {
  Mlp mlp;
  ModelInfo info;
};

nlohmann::json model_to_json(const Model& model);
/// Throws InputError on a version mismatch or malformed document.
Model model_from_json(const nlohmann::json& doc);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// Model code in the NN<T><A><M> scheme: T = training size in thousands,
/// A = attribute count, M = task count. A generic corpus gives plain "NN".
std::string model_code(bool specific, std::size_t training_size, int attributes, std::size_t tasks);

/// Distinct ranks 1..n from predicted normalized ranks: smallest prediction
/// is rank 1, ties broken by vertex id.
RankVector ranks_from_predictions(std::span<const double> predicted);

struct Prediction {
  std::vector<Measure> targets;
  std::vector<std::vector<double>> scores;  // raw network outputs per target
  std::vector<RankVector> ranks;
};

/// Computes the input features of `g`, runs the network and ranks each
/// output. `attributes` must match the model.
Prediction predict_ranks(const Model& model, const Graph& g, int attributes);

}  // namespace centrank
