#include "sngbm/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sngbm/errors.hpp"
#include "sngbm/parallel.hpp"

namespace sngbm {

namespace {

constexpr int kMaxDepthLimit = 32;
// Nodes smaller than this scan their features serially; spawning threads
// costs more than the histogram.
constexpr std::size_t kParallelNodeWork = 1 << 14;

struct SplitCandidate {
  bool valid = false;
  std::size_t bin = 0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const BinnedDataset& binned, std::span<const double> target,
              const TreeConfig& cfg, int threads)
      : binned_(binned), target_(target), cfg_(cfg), threads_(threads) {}

  RegressionTree build() {
    std::vector<std::size_t> all(binned_.rows);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<std::size_t>& samples, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();

    double sum = 0.0;
    for (const std::size_t i : samples) sum += target_[i];
    const std::size_t n = samples.size();
    const std::size_t min_leaf = static_cast<std::size_t>(cfg_.min_samples_leaf);

    int best_feature = -1;
    SplitCandidate best;
    if (depth < cfg_.max_depth && n >= 2 * min_leaf) {
      std::vector<SplitCandidate> per_feature(binned_.cols());
      const int threads =
          n * binned_.cols() >= kParallelNodeWork ? threads_ : 1;
      parallel_for(binned_.cols(), threads, [&](std::size_t f) {
        per_feature[f] = best_split(f, samples, sum);
      });
      // Ascending feature order with strict improvement: lowest index wins ties.
      for (std::size_t f = 0; f < per_feature.size(); ++f) {
        if (per_feature[f].valid && (best_feature < 0 || per_feature[f].gain > best.gain)) {
          best = per_feature[f];
          best_feature = static_cast<int>(f);
        }
      }
    }

    if (best_feature < 0) {
      TreeNode& leaf = tree_.nodes[id];
      leaf.value = sum / static_cast<double>(n);
      leaf.cover = n;
      return id;
    }

    const auto& column = binned_.bins[best_feature];
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (const std::size_t i : samples) {
      (column[i] <= best.bin ? left : right).push_back(i);
    }

    {
      TreeNode& node = tree_.nodes[id];
      node.feature = best_feature;
      node.threshold = binned_.thresholds[best_feature][best.bin];
      node.gain = best.gain;
      node.cover = n;
    }
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  SplitCandidate best_split(std::size_t f, const std::vector<std::size_t>& samples,
                            double sum) const {
    const std::size_t bins = binned_.bin_count(f);
    SplitCandidate best;
    if (bins < 2) return best;

    std::vector<std::size_t> counts(bins, 0);
    std::vector<double> sums(bins, 0.0);
    const auto& column = binned_.bins[f];
    for (const std::size_t i : samples) {
      ++counts[column[i]];
      sums[column[i]] += target_[i];
    }

    const std::size_t n = samples.size();
    const std::size_t min_leaf = static_cast<std::size_t>(cfg_.min_samples_leaf);
    const double parent = sum * sum / static_cast<double>(n);
    std::size_t n_left = 0;
    double s_left = 0.0;
    for (std::size_t k = 0; k + 1 < bins; ++k) {
      n_left += counts[k];
      s_left += sums[k];
      const std::size_t n_right = n - n_left;
      if (n_left < min_leaf || n_right < min_leaf) continue;
      const double s_right = sum - s_left;
      const double gain = s_left * s_left / static_cast<double>(n_left) +
                          s_right * s_right / static_cast<double>(n_right) - parent;
      if (!(gain > cfg_.min_gain)) continue;
      if (!best.valid || gain > best.gain) best = {true, k, gain};
    }
    return best;
  }

  const BinnedDataset& binned_;
  std::span<const double> target_;
  const TreeConfig& cfg_;
  int threads_;
  RegressionTree tree_;
};

}  // namespace

void TreeConfig::validate() const {
  if (max_depth < 1 || max_depth > kMaxDepthLimit) {
    throw ConfigError("max_depth must be in [1, 32], got " + std::to_string(max_depth));
  }
  if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
  if (!(min_gain >= 0.0) || !std::isfinite(min_gain)) {
    throw ConfigError("min_gain must be a finite non-negative number");
  }
}

RegressionTree RegressionTree::leaf(double value, std::size_t cover) {
  RegressionTree t;
  TreeNode node;
  node.value = value;
  node.cover = cover;
  t.nodes.push_back(node);
  return t;
}

std::size_t RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  // Pre-order layout: children follow their parent, so one forward pass works.
  std::vector<std::size_t> level(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes[i].is_leaf()) {
      level[nodes[i].left] = level[i] + 1;
      level[nodes[i].right] = level[i] + 1;
    }
  }
  return deepest;
}

std::size_t RegressionTree::internal_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return !n.is_leaf(); }));
}

RegressionTree fit_tree(const BinnedDataset& binned, std::span<const double> target,
                        const TreeConfig& cfg, int threads) {
  cfg.validate();
  if (target.size() != binned.rows) {
    throw InvalidInput("target length " + std::to_string(target.size()) +
                       " does not match binned row count " + std::to_string(binned.rows));
  }
  if (binned.rows < 2 * static_cast<std::size_t>(cfg.min_samples_leaf)) {
    throw InvalidInput("fit_tree needs at least 2 * min_samples_leaf rows");
  }
  for (const double t : target) {
    if (!std::isfinite(t)) throw InvalidInput("fit_tree target must be finite");
  }
  return TreeBuilder(binned, target, cfg, threads).build();
}

double predict_tree(const RegressionTree& tree, std::span<const double> row) {
  if (tree.nodes.empty()) throw InvalidInput("empty tree");
  std::size_t id = 0;
  while (!tree.nodes[id].is_leaf()) {
    const TreeNode& node = tree.nodes[id];
    const auto f = static_cast<std::size_t>(node.feature);
    if (f >= row.size()) throw InvalidInput("row is shorter than the tree's feature index");
    const double v = row[f];
    if (!std::isfinite(v)) throw InvalidInput("non-finite feature value in prediction row");
    id = static_cast<std::size_t>(v < node.threshold ? node.left : node.right);
  }
  return tree.nodes[id].value;
}

std::vector<FeatureUsage> tree_importance(const RegressionTree& tree,
                                          std::size_t num_features) {
  std::vector<FeatureUsage> usage(num_features);
  for (const TreeNode& node : tree.nodes) {
    if (node.is_leaf()) continue;
    const auto f = static_cast<std::size_t>(node.feature);
    if (f >= num_features) throw InvalidInput("tree references an unknown feature");
    ++usage[f].splits;
    usage[f].total_gain += node.gain;
    usage[f].trees = 1;
  }
  return usage;
}

}  // namespace sngbm
