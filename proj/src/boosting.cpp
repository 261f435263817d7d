#include "sngbm/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "sngbm/binning.hpp"
#include "sngbm/errors.hpp"
#include "sngbm/parallel.hpp"

namespace sngbm {

namespace {

void check_lengths(std::size_t n, std::initializer_list<std::size_t> sizes) {
  for (const std::size_t s : sizes) {
    if (s != n) throw InvalidInput("parameter, tree-output and target vectors differ in length");
  }
}

double mean_nll(std::span<const double> mu, std::span<const double> psi,
                std::span<const double> y) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) total += nll_point({mu[i], psi[i]}, y[i]);
  return total / static_cast<double>(y.size());
}

std::vector<double> tree_outputs(const RegressionTree& tree, const Matrix& x, int threads) {
  std::vector<double> out(x.rows);
  parallel_for(x.rows, threads, [&](std::size_t i) { out[i] = predict_tree(tree, x.row(i)); });
  return out;
}

}  // namespace

void BoostConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ConfigError("learning_rate must be in (0, 1]");
  }
  if (max_bins < 2 || max_bins > kMaxBinsLimit) throw ConfigError("max_bins must be in [2, 256]");
  if (line_search_halvings < 1) throw ConfigError("line_search_halvings must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  tree.validate();
}

double nll_total(std::span<const double> mu, std::span<const double> psi,
                 std::span<const double> f_mu, std::span<const double> f_psi,
                 std::span<const double> y, double rho) {
  check_lengths(y.size(), {mu.size(), psi.size(), f_mu.size(), f_psi.size()});
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += nll_point({mu[i] - rho * f_mu[i], psi[i] - rho * f_psi[i]}, y[i]);
  }
  return total;
}

double line_search(std::span<const double> mu, std::span<const double> psi,
                   std::span<const double> f_mu, std::span<const double> f_psi,
                   std::span<const double> y, int halvings) {
  if (halvings < 1) throw InvalidInput("line_search needs at least one halving");
  const double base = nll_total(mu, psi, f_mu, f_psi, y, 0.0);
  double rho = 1.0;
  for (int k = 0; k <= halvings; ++k, rho *= 0.5) {
    if (nll_total(mu, psi, f_mu, f_psi, y, rho) < base) return rho;
  }
  return 0.0;
}

TrainResult train(const Dataset& data, const BoostConfig& cfg, const TrainObserver& observer) {
  cfg.validate();
  data.validate();
  const std::size_t n = data.rows();
  const std::size_t min_rows =
      std::max<std::size_t>(2 * static_cast<std::size_t>(cfg.tree.min_samples_leaf), 10);
  if (n < min_rows) {
    throw InvalidInput("training needs at least " + std::to_string(min_rows) + " rows, got " +
                       std::to_string(n));
  }
  const int threads = resolve_threads(cfg.threads);
  const std::span<const double> y = data.targets;

  const BinnedDataset binned = build_bins(data.features, data.feature_names, cfg.max_bins, threads);

  double sum = 0.0;
  for (const double v : y) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const double v : y) ss += (v - mean) * (v - mean);
  const double std_dev = std::sqrt(ss / static_cast<double>(n - 1));

  TrainResult result;
  BoostModel& model = result.model;
  model.init_mu = mean;
  model.init_psi = clamp_psi(std::log(std::max(std_dev, kInitStdFloor)));
  model.eta = cfg.learning_rate;
  model.feature_names = data.feature_names;
  model.iterations.reserve(static_cast<std::size_t>(cfg.iterations));

  std::vector<double>& mu = result.mu;
  std::vector<double>& psi = result.psi;
  mu.assign(n, model.init_mu);
  psi.assign(n, model.init_psi);
  std::vector<double> grad_mu(n), grad_psi(n), next_mu(n), next_psi(n);

  result.nll_trace.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  double current_nll = mean_nll(mu, psi, y);
  result.nll_trace.push_back(current_nll);

  const bool natural = cfg.mode == BoostMode::natural;
  const double min_rho = std::ldexp(1.0, -cfg.line_search_halvings);
  bool any_step = false;

  for (int m = 1; m <= cfg.iterations; ++m) {
    parallel_for(n, threads, [&](std::size_t i) {
      const GradientPair g = natural_gradient({mu[i], clamp_psi(psi[i])}, y[i]);
      grad_mu[i] = g.d_mu;
      grad_psi[i] = g.d_psi;
    });

    IterationRecord record;
    if (natural) {
      // The two parameter trees are independent given the gradients.
      if (threads > 1) {
        auto psi_job = std::async(std::launch::async, [&] {
          return fit_tree(binned, grad_psi, cfg.tree, threads);
        });
        record.tree_mu = fit_tree(binned, grad_mu, cfg.tree, threads);
        record.tree_psi = psi_job.get();
      } else {
        record.tree_mu = fit_tree(binned, grad_mu, cfg.tree, 1);
        record.tree_psi = fit_tree(binned, grad_psi, cfg.tree, 1);
      }
    } else {
      record.tree_mu = fit_tree(binned, grad_mu, cfg.tree, threads);
      record.tree_psi = RegressionTree::leaf(0.0, n);
    }

    const std::vector<double> f_mu = tree_outputs(record.tree_mu, data.features, threads);
    const std::vector<double> f_psi = natural ? tree_outputs(record.tree_psi, data.features, threads)
                                              : std::vector<double>(n, 0.0);

    double rho = 1.0;
    double next_nll = current_nll;
    auto stage = [&](double r) {
      for (std::size_t i = 0; i < n; ++i) {
        next_mu[i] = mu[i] - model.eta * (r * f_mu[i]);
        next_psi[i] = psi[i] - model.eta * (r * f_psi[i]);
      }
      return mean_nll(next_mu, next_psi, y);
    };

    if (natural) {
      rho = line_search(mu, psi, f_mu, f_psi, y, cfg.line_search_halvings);
      // rho is searched at full step; the applied step is eta * rho. The NLL is
      // not convex in (mu, psi), so keep halving if the shrunken step regresses.
      while (rho > 0.0) {
        next_nll = stage(rho);
        if (next_nll <= current_nll) break;
        rho *= 0.5;
        if (rho < min_rho) rho = 0.0;
      }
    } else {
      next_nll = stage(rho);
    }

    if (observer) observer({m, mu, psi, grad_mu, grad_psi, rho});

    if (rho > 0.0) {
      any_step = true;
      mu.swap(next_mu);
      psi.swap(next_psi);
      current_nll = next_nll;
    }
    record.rho = rho;
    model.iterations.push_back(std::move(record));
    result.nll_trace.push_back(current_nll);
  }

  if (!any_step) result.status = TrainStatus::all_iterations_skipped;
  return result;
}

NormalParams predict_row(const BoostModel& model, std::span<const double> row) {
  if (row.size() != model.num_features()) {
    throw InvalidInput("row has " + std::to_string(row.size()) + " features, model expects " +
                       std::to_string(model.num_features()));
  }
  double mu = model.init_mu;
  double psi = model.init_psi;
  for (const IterationRecord& it : model.iterations) {
    mu -= model.eta * (it.rho * predict_tree(it.tree_mu, row));
    psi -= model.eta * (it.rho * predict_tree(it.tree_psi, row));
  }
  return {mu, clamp_psi(psi)};
}

std::vector<NormalParams> predict(const BoostModel& model, const Matrix& features, int threads) {
  if (features.cols != model.num_features()) {
    throw InvalidInput("feature matrix has " + std::to_string(features.cols) +
                       " columns, model expects " + std::to_string(model.num_features()));
  }
  require_finite(features);
  std::vector<NormalParams> out(features.rows);
  parallel_for(features.rows, threads,
               [&](std::size_t i) { out[i] = predict_row(model, features.row(i)); });
  return out;
}

}  // namespace sngbm
