#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sngbm/boosting.hpp"

namespace sngbm {

enum class ParamSet { mean, variance };
enum class ImportanceKind { weight, gain };

struct FeatureImportance {
  std::size_t weight = 0;   // split count
  double gain = 0.0;        // average gain per split
  double total_gain = 0.0;  // sum of gains (convenience column)
};

struct ImportanceTable {
  ParamSet set = ParamSet::mean;
  std::vector<std::string> feature_names;
  std::vector<FeatureImportance> features;

  std::vector<double> column(ImportanceKind kind) const;
};

/// Aggregates splits over the mu-trees (mean) or the psi-trees (variance).
ImportanceTable feature_importance(const BoostModel& model, ParamSet set);

struct RankedFeature {
  std::size_t index = 0;
  std::string name;
  double score = 0.0;
  double mean_share = 0.0;
  double variance_share = 0.0;
};

/// Each set's importance column is scaled to unit sum (an all-zero column stays
/// zero), then score = alpha * mean + (1 - alpha) * variance. Sorted by score
/// descending, ties by feature index.
std::vector<RankedFeature> combined_ranking(const BoostModel& model, double alpha = 0.5,
                                            ImportanceKind kind = ImportanceKind::gain);

std::vector<std::size_t> rank_features(const std::vector<double>& scores);

}  // namespace sngbm
