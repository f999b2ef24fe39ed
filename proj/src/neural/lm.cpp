#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "centrank/error.hpp"
#include "centrank/io.hpp"
#include "centrank/neural.hpp"

namespace centrank {

void LmConfig::validate() const {
  if (!(mu_init > 0)) throw UsageError("mu must be positive");
  if (!(mu_decrease > 0 && mu_decrease < 1)) throw UsageError("mu decrease factor must lie in (0, 1)");
  if (!(mu_increase > 1)) throw UsageError("mu increase factor must exceed 1");
  if (!(mu_max > mu_init)) throw UsageError("mu_max must exceed the initial mu");
  if (max_epochs < 1) throw UsageError("max_epochs must be at least 1");
  if (patience < 1) throw UsageError("patience must be at least 1");
  if (!(val_fraction >= 0 && test_fraction >= 0 && val_fraction + test_fraction < 1))
    throw UsageError("validation and test fractions must leave rows for training");
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()), y.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    out.y.row(static_cast<Eigen::Index>(i)) = y.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

DataSplit split_rows(std::size_t rows, const LmConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n_test = static_cast<std::size_t>(std::llround(cfg.test_fraction * static_cast<double>(rows)));
  const auto n_val = static_cast<std::size_t>(std::llround(cfg.val_fraction * static_cast<double>(rows)));
  DataSplit split;
  split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test),
                          order.begin() + static_cast<std::ptrdiff_t>(n_test + n_val));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test + n_val), order.end());
  for (auto* part : {&split.train, &split.validation, &split.test}) std::sort(part->begin(), part->end());
  return split;
}

DataSplit split_groups(std::span<const std::size_t> group_of_row, const LmConfig& cfg) {
  cfg.validate();
  const std::size_t groups =
      group_of_row.empty() ? 0 : *std::max_element(group_of_row.begin(), group_of_row.end()) + 1;
  std::vector<std::size_t> size(groups, 0);
  for (std::size_t g : group_of_row) ++size[g];
  std::vector<std::size_t> order(groups);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const double rows = static_cast<double>(group_of_row.size());
  std::vector<int> side(groups, 0);  // 0 train, 1 validation, 2 test
  double taken_test = 0;
  double taken_val = 0;
  for (std::size_t g : order) {
    if (taken_test < cfg.test_fraction * rows) {
      side[g] = 2;
      taken_test += static_cast<double>(size[g]);
    } else if (taken_val < cfg.val_fraction * rows) {
      side[g] = 1;
      taken_val += static_cast<double>(size[g]);
    }
  }
  DataSplit split;
  for (std::size_t r = 0; r < group_of_row.size(); ++r) {
    switch (side[group_of_row[r]]) {
      case 2: split.test.push_back(r); break;
      case 1: split.validation.push_back(r); break;
      default: split.train.push_back(r); break;
    }
  }
  return split;
}

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

TrainResult train_lm(Mlp model, const Dataset& train, const Dataset& validation, const LmConfig& cfg) {
  cfg.validate();
  if (train.rows() == 0) throw InputError("training set is empty");
  const bool has_validation = validation.rows() > 0;
  const auto params = static_cast<Eigen::Index>(model.parameter_count());

  TrainResult result;
  auto& history = result.history;
  double mu = cfg.mu_init;
  double sse = sum_squared_error(model, train.x, train.y);
  double val_sse = has_validation ? sum_squared_error(model, validation.x, validation.y)
                                  : std::numeric_limits<double>::quiet_NaN();
  if (!std::isfinite(sse)) throw NumericalError("initial training error is not finite");
  history.epochs.push_back({0, mu, sse, val_sse});

  std::vector<double> best(model.parameters().begin(), model.parameters().end());
  double best_score = has_validation ? val_sse : sse;
  std::size_t stalled = 0;
  history.stop_reason = "max_epochs";

  std::vector<double> candidate(model.parameters().size());
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    auto ne = kernels::normal_equations(model, train.x, train.y);
    if (!ne.jtj.allFinite() || !ne.jte.allFinite()) throw NumericalError("non-finite Jacobian");
    if (ne.jte.norm() < 1e-12) {
      history.stop_reason = "gradient";
      break;
    }

    bool accepted = false;
    for (std::size_t attempt = 0; attempt < cfg.max_retries; ++attempt) {
      Eigen::MatrixXd damped = ne.jtj;
      damped.diagonal().array() += mu;
      Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(damped);
      if (llt.info() == Eigen::Success) {
        Eigen::VectorXd step = llt.solve(-ne.jte);
        auto current = model.parameters();
        for (Eigen::Index i = 0; i < params; ++i) candidate[i] = current[i] + step[i];
        if (all_finite(candidate)) {
          Mlp trial = model;
          trial.set_parameters(candidate);
          const double trial_sse = sum_squared_error(trial, train.x, train.y);
          if (trial_sse < sse) {
            model = std::move(trial);
            sse = trial_sse;
            mu *= cfg.mu_decrease;
            accepted = true;
            break;
          }
        }
      }
      mu *= cfg.mu_increase;
      if (mu > cfg.mu_max) break;
    }
    if (!accepted) {
      history.stop_reason = mu > cfg.mu_max ? "mu_max" : "retry_limit";
      break;
    }
    if (!all_finite(model.parameters())) throw NumericalError("training produced non-finite parameters");

    if (has_validation) val_sse = sum_squared_error(model, validation.x, validation.y);
    history.epochs.push_back({epoch, mu, sse, val_sse});

    const double score = has_validation ? val_sse : sse;
    if (score < best_score - 1e-12 * best_score) {
      best_score = score;
      best.assign(model.parameters().begin(), model.parameters().end());
      history.best_epoch = epoch;
      stalled = 0;
    } else if (++stalled >= cfg.patience) {
      history.stop_reason = "validation";
      break;
    }
  }

  model.set_parameters(best);
  result.model = std::move(model);
  return result;
}

void write_history_csv(const TrainingHistory& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "epoch,mu,train_sse,val_sse\n";
  for (const auto& e : h.epochs)
    out << e.epoch << ',' << format_double(e.mu) << ',' << format_double(e.train_sse) << ','
        << (std::isnan(e.val_sse) ? std::string() : format_double(e.val_sse)) << '\n';
}

}  // namespace centrank
