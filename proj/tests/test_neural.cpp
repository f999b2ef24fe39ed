#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "centrank/error.hpp"
#include "centrank/eval.hpp"
#include "centrank/io.hpp"
#include "centrank/model.hpp"
#include "centrank/neural.hpp"
#include "centrank/parallel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace centrank;
using namespace centrank::testing;

namespace {

RowMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("centrank_test_" + name);
}

}  // namespace

TEST_CASE("parameter layout") {
  Mlp m = Mlp::init(default_layer_sizes(2, 1), 0);
  CHECK(m.layer_sizes() == std::vector<std::size_t>{2, 20, 20, 20, 1});
  CHECK(m.parameter_count() == 2 * 20 + 20 + 20 * 20 + 20 + 20 * 20 + 20 + 20 + 1);
  CHECK(m.activations().back() == Activation::identity);
  CHECK(m.activations().front() == Activation::tanh);
  for (std::size_t l = 0; l < m.num_layers(); ++l) CHECK(m.bias(l).isZero());
  CHECK(m.weights(0).cwiseAbs().maxCoeff() <= 1 / std::sqrt(2.0));
  CHECK(Mlp::init({2, 3, 1}, 5).parameters().size() == 13);
  CHECK_THROWS_AS(Mlp::init({2}, 0), UsageError);
}

TEST_CASE("forward pass matches a hand computation") {
  // 1 -> 2 (tanh) -> 1 (identity)
  Mlp m = Mlp::from_parameters({1, 2, 1}, {Activation::tanh, Activation::identity},
                               {0.5, -1.0, 0.1, 0.2, 2.0, 3.0, -0.5});
  const double x = 0.7;
  const double want = 2.0 * std::tanh(0.5 * x + 0.1) + 3.0 * std::tanh(-1.0 * x + 0.2) - 0.5;
  CHECK(m.forward(std::vector<double>{x})[0] == doctest::Approx(want).epsilon(1e-15));
  RowMatrix xs(1, 1);
  xs(0, 0) = x;
  CHECK(m.forward(xs)(0, 0) == doctest::Approx(want).epsilon(1e-15));
  CHECK_THROWS_AS(m.forward(std::vector<double>{1, 2}), InputError);
}

TEST_CASE("analytic Jacobian matches central differences on random nets") {
  std::mt19937_64 rng(99);
  double worst = 0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    std::vector<std::size_t> sizes{1 + rng() % 4};
    const std::size_t hidden = 1 + rng() % 3;
    for (std::size_t h = 0; h < hidden; ++h) sizes.push_back(1 + rng() % 6);
    sizes.push_back(1 + rng() % 3);
    Mlp m = Mlp::init(sizes, rng());
    // Nonzero biases so their columns are exercised.
    std::vector<double> p(m.parameters().begin(), m.parameters().end());
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double& x : p) x += u(rng);
    m.set_parameters(p);

    RowMatrix x = random_matrix(10, static_cast<Eigen::Index>(sizes.front()), rng);
    RowMatrix y = random_matrix(10, static_cast<Eigen::Index>(sizes.back()), rng);
    Jacobian j = jacobian(m, x, y);
    Eigen::MatrixXd fd = oracle::finite_difference_jacobian(m, x);
    worst = std::max(worst, (j.J - fd).cwiseAbs().maxCoeff());

    RowMatrix pred = m.forward(x);
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index o = 0; o < pred.cols(); ++o)
        CHECK(j.e(r * pred.cols() + o) == doctest::Approx(pred(r, o) - y(r, o)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("linear 1->1 net has Jacobian columns (x, 1)") {
  Mlp m = Mlp::from_parameters({1, 1}, {Activation::identity}, {0.3, -0.2});
  RowMatrix x(4, 1), y(4, 1);
  x << 1, -2, 0.5, 3;
  y.setZero();
  Jacobian j = jacobian(m, x, y);
  for (Eigen::Index r = 0; r < 4; ++r) {
    CHECK(j.J(r, 0) == x(r, 0));
    CHECK(j.J(r, 1) == 1.0);
  }
}

TEST_CASE("zero input on a zero-bias net zeroes the first-layer weight columns") {
  Mlp m = Mlp::init({3, 4, 2}, 8);
  RowMatrix x = RowMatrix::Zero(5, 3), y = RowMatrix::Ones(5, 2);
  Jacobian j = jacobian(m, x, y);
  CHECK(j.J.leftCols(12).isZero());
  CHECK_FALSE(j.J.rightCols(static_cast<Eigen::Index>(m.parameter_count()) - 12).isZero());
}

TEST_CASE("blocked normal equations match the dense reference") {
  std::mt19937_64 rng(4);
  Mlp m = Mlp::init({2, 20, 20, 20, 2}, 4);
  RowMatrix x = random_matrix(700, 2, rng), y = random_matrix(700, 2, rng);
  auto ref = kernels::reference::normal_equations(m, x, y);
  for (std::size_t threads : {1, 3}) {
    ScopedThreads scope(threads);
    auto ne = kernels::normal_equations(m, x, y);
    Eigen::MatrixXd a = ne.jtj.triangularView<Eigen::Lower>();
    Eigen::MatrixXd b = ref.jtj.triangularView<Eigen::Lower>();
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * b.cwiseAbs().maxCoeff());
    CHECK((ne.jte - ref.jte).cwiseAbs().maxCoeff() <= 1e-10 * ref.jte.cwiseAbs().maxCoeff());
    CHECK(ne.sse == doctest::Approx(ref.sse).epsilon(1e-12));
  }
  CHECK(ref.sse == doctest::Approx(sum_squared_error(m, x, y)).epsilon(1e-12));
  Jacobian j = jacobian(m, x, y);
  CHECK(ref.sse == doctest::Approx(j.e.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("LM fits a line") {
  std::mt19937_64 rng(1);
  Dataset all;
  all.x.resize(200, 1);
  all.y.resize(200, 1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (Eigen::Index i = 0; i < 200; ++i) {
    all.x(i, 0) = u(rng);
    all.y(i, 0) = 2 * all.x(i, 0) - 1;
  }
  LmConfig cfg;
  cfg.max_epochs = 50;
  cfg.seed = 3;
  auto split = split_rows(200, cfg);
  CHECK(split.test.size() == 20);
  CHECK(split.validation.size() == 30);
  CHECK(split.train.size() == 150);
  auto res = train_lm(Mlp::init({1, 5, 1}, 2), all.subset(split.train), all.subset(split.validation), cfg);
  Dataset test = all.subset(split.test);
  RowMatrix pred = res.model.forward(test.x);
  std::vector<double> p(pred.data(), pred.data() + pred.size()), t(test.y.data(), test.y.data() + test.y.size());
  CHECK(r_squared(p, t) >= 0.999);
  CHECK(res.history.epochs.size() <= 51);
}

TEST_CASE("LM learns XOR") {
  Dataset d;
  d.x.resize(4, 2);
  d.y.resize(4, 1);
  d.x << 0, 0, 0, 1, 1, 0, 1, 1;
  d.y << 0, 1, 1, 0;
  LmConfig cfg;
  cfg.val_fraction = 0;
  cfg.test_fraction = 0;
  cfg.max_epochs = 200;
  auto res = train_lm(Mlp::init({2, 4, 1}, 7), d, Dataset{}, cfg);
  RowMatrix pred = res.model.forward(d.x);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(pred(i, 0) - d.y(i, 0)) <= 0.1);
}

TEST_CASE("accepted LM steps strictly decrease training error and training is reproducible") {
  std::mt19937_64 rng(12);
  Dataset d{random_matrix(300, 2, rng), random_matrix(300, 1, rng)};
  for (Eigen::Index i = 0; i < 300; ++i) d.y(i, 0) = std::sin(3 * d.x(i, 0)) * d.x(i, 1);
  LmConfig cfg;
  cfg.seed = 5;
  auto split = split_rows(300, cfg);
  auto train = d.subset(split.train), val = d.subset(split.validation);
  ScopedThreads one(1);
  auto a = train_lm(Mlp::init({2, 8, 1}, 1), train, val, cfg);
  for (std::size_t e = 1; e < a.history.epochs.size(); ++e)
    CHECK(a.history.epochs[e].train_sse < a.history.epochs[e - 1].train_sse);
  auto b = train_lm(Mlp::init({2, 8, 1}, 1), train, val, cfg);
  CHECK(std::equal(a.model.parameters().begin(), a.model.parameters().end(), b.model.parameters().begin()));
  // Returned parameters are those of the best validation epoch.
  const double best_val = a.history.epochs[a.history.best_epoch].val_sse;
  CHECK(sum_squared_error(a.model, val.x, val.y) == doctest::Approx(best_val).epsilon(1e-12));
  for (const auto& e : a.history.epochs) CHECK(e.val_sse >= best_val);
}

TEST_CASE("exhausted damping halts with finite best-so-far parameters") {
  std::mt19937_64 rng(2);
  Dataset d{random_matrix(100, 2, rng), random_matrix(100, 1, rng)};  // pure noise
  LmConfig cfg;
  cfg.val_fraction = 0;
  cfg.test_fraction = 0;
  cfg.mu_init = 1e-3;
  cfg.mu_max = 1e-2;
  cfg.max_epochs = 10000;
  cfg.patience = 10000;
  auto res = train_lm(Mlp::init({2, 10, 1}, 3), d, Dataset{}, cfg);
  CHECK(res.history.stop_reason == "mu_max");
  for (double p : res.model.parameters()) CHECK(std::isfinite(p));
}

TEST_CASE("LM configuration is validated") {
  LmConfig cfg;
  cfg.mu_decrease = 1.5;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = LmConfig{};
  cfg.val_fraction = 0.6;
  cfg.test_fraction = 0.5;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("group split keeps each group on one side") {
  std::vector<std::size_t> group;
  for (std::size_t g = 0; g < 40; ++g) group.insert(group.end(), 5 + g % 7, g);
  LmConfig cfg;
  cfg.seed = 9;
  auto s = split_groups(group, cfg);
  std::map<std::size_t, int> side;
  auto mark = [&](const std::vector<std::size_t>& rows, int k) {
    for (auto r : rows) {
      auto [it, fresh] = side.emplace(group[r], k);
      CHECK(it->second == k);
    }
  };
  mark(s.train, 0);
  mark(s.validation, 1);
  mark(s.test, 2);
  CHECK(s.train.size() + s.validation.size() + s.test.size() == group.size());
  CHECK_FALSE(s.test.empty());
  CHECK_FALSE(s.validation.empty());
}

TEST_CASE("model save and load round-trip bitwise") {
  Model model;
  model.mlp = Mlp::init({3, 5, 2}, 11);
  model.info.name = "NN232";
  model.info.attributes = 3;
  model.info.targets = {Measure::betweenness, Measure::closeness};
  model.info.corpus = "c:specific:4";
  model.info.eigen.shift = true;
  model.info.training.seed = 77;
  model.info.metrics["test_r2_closeness"] = 0.91;
  const auto path = temp_path("model.json");
  save_model(model, path);
  Model back = load_model(path);
  CHECK(std::equal(back.mlp.parameters().begin(), back.mlp.parameters().end(), model.mlp.parameters().begin()));
  CHECK(back.mlp.layer_sizes() == model.mlp.layer_sizes());
  CHECK(back.mlp.activations() == model.mlp.activations());
  CHECK(back.info.name == "NN232");
  CHECK(back.info.targets == model.info.targets);
  CHECK(back.info.eigen.shift);
  CHECK(back.info.training.seed == 77);
  CHECK(back.info.metrics == model.info.metrics);
  std::mt19937_64 rng(1);
  RowMatrix x = random_matrix(20, 3, rng);
  CHECK(back.mlp.forward(x) == model.mlp.forward(x));

  // Truncated and version-mismatched files fail cleanly.
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  write_text(path, text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_model(path), InputError);
  auto doc = model_to_json(model);
  doc["version"] = 99;
  CHECK_THROWS_AS(model_from_json(doc), InputError);
  doc = model_to_json(model);
  doc["weights"][0].erase(0);
  CHECK_THROWS_AS(model_from_json(doc), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("model codes") {
  CHECK(model_code(false, 2000, 2, 1) == "NN");
  CHECK(model_code(true, 2000, 2, 1) == "NN221");
  CHECK(model_code(true, 3000, 3, 2) == "NN332");
}

TEST_CASE("prediction ranks") {
  std::vector<double> p{0.5, 0.1, 0.5, 0.9};
  CHECK(ranks_from_predictions(p).ranks == std::vector<double>{2, 1, 3, 4});

  Graph g = random_connected_graph(50, 0.08, 6);
  Model copy_degree;
  copy_degree.mlp = Mlp::from_parameters({2, 1}, {Activation::identity}, {1.0, 0.0, 0.0});
  copy_degree.info.attributes = 2;
  copy_degree.info.targets = {Measure::betweenness};
  Prediction pr = predict_ranks(copy_degree, g, 2);
  REQUIRE(pr.ranks.size() == 1);
  for (Vertex u = 0; u < 50; ++u)
    for (Vertex v = 0; v < 50; ++v)
      if (g.degree(u) > g.degree(v)) CHECK(pr.ranks[0].ranks[u] < pr.ranks[0].ranks[v]);
  CHECK_THROWS_AS(predict_ranks(copy_degree, g, 3), InputError);
}

TEST_CASE("predictions follow a vertex permutation") {
  Graph g = random_connected_graph(60, 0.08, 9);
  std::vector<Vertex> perm(60);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  std::vector<Edge> moved;
  for (auto [u, v] : g.edges()) moved.emplace_back(perm[u], perm[v]);
  Graph h = Graph::from_edges(60, moved);

  Model m;
  m.mlp = Mlp::init({2, 6, 1}, 4);
  m.info.attributes = 2;
  auto a = predict_ranks(m, g, 2);
  auto b = predict_ranks(m, h, 2);
  std::size_t same = 0;
  for (Vertex v = 0; v < 60; ++v)
    if (std::abs(a.scores[0][v] - b.scores[0][perm[v]]) <= 1e-12) ++same;
  CHECK(same >= 57);
  std::vector<double> ra = a.ranks[0].ranks, rb(60);
  for (Vertex v = 0; v < 60; ++v) rb[v] = b.ranks[0].ranks[perm[v]];
  CHECK(*kendall_tau_b(ra, rb) >= 0.99);
}
