#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sngbm/binning.hpp"

namespace sngbm {

struct TreeConfig {
  int max_depth = 6;
  int min_samples_leaf = 20;
  double min_gain = 0.0;

  void validate() const;
};

struct TreeNode {
  // Internal nodes have feature >= 0; leaves have feature == -1.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double gain = 0.0;
  double value = 0.0;
  std::size_t cover = 0;

  bool is_leaf() const { return feature < 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary regression tree stored as a flat node array in pre-order; the root
/// is nodes[0] and every child index is greater than its parent's.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  static RegressionTree leaf(double value, std::size_t cover);

  std::size_t depth() const;
  std::size_t internal_count() const;

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;
};

/// Greedy depth-wise CART on histogram bins. At every node each feature's
/// (count, sum) histogram is scanned for the split after bin k maximising
///   S_L^2 / n_L + S_R^2 / n_R - S^2 / n
/// subject to gain > min_gain and both sides >= min_samples_leaf. Ties go to
/// the lowest feature, then the lowest bin. Leaves hold the mean target.
RegressionTree fit_tree(const BinnedDataset& binned, std::span<const double> target,
                        const TreeConfig& cfg, int threads = 1);

/// Routes left iff row[feature] < threshold. Throws InvalidInput on a
/// non-finite entry that is consulted.
double predict_tree(const RegressionTree& tree, std::span<const double> row);

struct FeatureUsage {
  std::size_t splits = 0;
  double total_gain = 0.0;
  // 1 if the feature appears anywhere in the tree; sums to a tree count.
  std::size_t trees = 0;
};

std::vector<FeatureUsage> tree_importance(const RegressionTree& tree,
                                          std::size_t num_features);

}  // namespace sngbm
