#include "sngbm/interpret.hpp"

#include <algorithm>
#include <numeric>

#include "sngbm/errors.hpp"

namespace sngbm {

namespace {

std::vector<double> unit_sum(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total > 0.0) {
    for (double& x : v) x /= total;
  }
  return v;
}

}  // namespace

std::vector<double> ImportanceTable::column(ImportanceKind kind) const {
  std::vector<double> out;
  out.reserve(features.size());
  for (const FeatureImportance& f : features) {
    out.push_back(kind == ImportanceKind::weight ? static_cast<double>(f.weight) : f.gain);
  }
  return out;
}

ImportanceTable feature_importance(const BoostModel& model, ParamSet set) {
  const std::size_t d = model.num_features();
  ImportanceTable table;
  table.set = set;
  table.feature_names = model.feature_names;
  table.features.resize(d);
  for (const IterationRecord& it : model.iterations) {
    const RegressionTree& tree = set == ParamSet::mean ? it.tree_mu : it.tree_psi;
    const auto usage = tree_importance(tree, d);
    for (std::size_t f = 0; f < d; ++f) {
      table.features[f].weight += usage[f].splits;
      table.features[f].total_gain += usage[f].total_gain;
    }
  }
  for (FeatureImportance& f : table.features) {
    f.gain = f.weight == 0 ? 0.0 : f.total_gain / static_cast<double>(f.weight);
  }
  return table;
}

std::vector<std::size_t> rank_features(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<RankedFeature> combined_ranking(const BoostModel& model, double alpha,
                                            ImportanceKind kind) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must be in [0, 1]");
  const auto mean = unit_sum(feature_importance(model, ParamSet::mean).column(kind));
  const auto variance = unit_sum(feature_importance(model, ParamSet::variance).column(kind));

  std::vector<double> scores(mean.size());
  for (std::size_t f = 0; f < scores.size(); ++f) {
    scores[f] = alpha * mean[f] + (1.0 - alpha) * variance[f];
  }
  std::vector<RankedFeature> out;
  out.reserve(scores.size());
  for (const std::size_t f : rank_features(scores)) {
    out.push_back({f, model.feature_names[f], scores[f], mean[f], variance[f]});
  }
  return out;
}

}  // namespace sngbm
