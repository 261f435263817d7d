#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sngbm/dataset.hpp"
#include "sngbm/dist_normal.hpp"
#include "sngbm/tree.hpp"

namespace sngbm {

inline constexpr int kModelFormatVersion = 1;
inline constexpr double kInitStdFloor = 1e-3;

enum class BoostMode {
  // Both parameter trees, line-searched shared step.
  natural,
  // psi frozen at its initial value, single-leaf zero psi-trees, rho fixed
  // at 1: plain squared-error boosting of mu on the same tree learner.
  mean_only,
};

struct BoostConfig {
  int iterations = 300;
  double learning_rate = 0.3;
  TreeConfig tree{};
  int max_bins = kDefaultMaxBins;
  int line_search_halvings = 20;
  // 0 = hardware concurrency. Results do not depend on this value.
  int threads = 1;
  BoostMode mode = BoostMode::natural;

  void validate() const;
};

struct IterationRecord {
  double rho = 0.0;
  RegressionTree tree_mu;
  RegressionTree tree_psi;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct BoostModel {
  double init_mu = 0.0;
  double init_psi = 0.0;
  double eta = 0.3;
  std::vector<IterationRecord> iterations;
  std::vector<std::string> feature_names;
  // Set when the training targets were ln(y); lets predict/evaluate report
  // on the original scale.
  bool log_transform = false;
  // Label column name at training time; empty when unknown.
  std::string target;
  int format_version = kModelFormatVersion;

  std::size_t num_features() const { return feature_names.size(); }

  friend bool operator==(const BoostModel&, const BoostModel&) = default;
};

enum class TrainStatus { ok, all_iterations_skipped };

struct TrainResult {
  BoostModel model;
  // Mean training NLL; entry 0 is the initial fit, entry m follows iteration m.
  std::vector<double> nll_trace;
  // Final in-loop parameter state (psi unclamped).
  std::vector<double> mu;
  std::vector<double> psi;
  TrainStatus status = TrainStatus::ok;
};

/// Per-iteration view handed to TrainObserver before the parameter update.
struct IterationView {
  int iteration = 0;  // 1-based
  std::span<const double> mu;
  std::span<const double> psi;
  std::span<const double> grad_mu;
  std::span<const double> grad_psi;
  double rho = 0.0;
};

using TrainObserver = std::function<void(const IterationView&)>;

TrainResult train(const Dataset& data, const BoostConfig& cfg,
                  const TrainObserver& observer = {});

/// Total NLL of (mu - rho * f_mu, psi - rho * f_psi) against y.
double nll_total(std::span<const double> mu, std::span<const double> psi,
                 std::span<const double> f_mu, std::span<const double> f_psi,
                 std::span<const double> y, double rho);

/// Halving search over rho in {1, 1/2, ..., 2^-halvings}: the first (largest)
/// rho whose total NLL is strictly below the NLL at rho = 0, else 0.
double line_search(std::span<const double> mu, std::span<const double> psi,
                   std::span<const double> f_mu, std::span<const double> f_psi,
                   std::span<const double> y, int halvings);

NormalParams predict_row(const BoostModel& model, std::span<const double> row);

std::vector<NormalParams> predict(const BoostModel& model, const Matrix& features,
                                  int threads = 1);

std::string save_model(const BoostModel& model);
BoostModel load_model(const std::string& document);

void save_model_file(const BoostModel& model, const std::string& path);
BoostModel load_model_file(const std::string& path);

}  // namespace sngbm
