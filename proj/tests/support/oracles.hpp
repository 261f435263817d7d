#pragma once

// Test-only reference implementations. Nothing here calls into the code path
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "sngbm/binning.hpp"
#include "sngbm/dist_normal.hpp"
#include "sngbm/tree.hpp"

namespace sngbm::oracle {

// Normal negative log density written out from the formula, no clamping.
inline double normal_nll(double mu, double psi, double y) {
  const double sigma = std::exp(psi);
  const double density = std::exp(-(y - mu) * (y - mu) / (2.0 * sigma * sigma)) /
                         (sigma * std::sqrt(2.0 * M_PI));
  return -std::log(density);
}

// Central finite differences of nll_point in (mu, psi).
inline GradientPair finite_difference_gradient(NormalParams p, double y, double h = 1e-6) {
  const double d_mu =
      (nll_point({p.mu + h, p.psi}, y) - nll_point({p.mu - h, p.psi}, y)) / (2.0 * h);
  const double d_psi =
      (nll_point({p.mu, p.psi + h}, y) - nll_point({p.mu, p.psi - h}, y)) / (2.0 * h);
  return {d_mu, d_psi};
}

// E[s s^T] over y ~ N(mu, sigma^2), s = score of the NLL in (mu, psi),
// estimated from `draws` samples. The score is written out independently.
inline FisherMatrix monte_carlo_fisher(NormalParams p, std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double sigma = std::exp(p.psi);
  std::normal_distribution<double> dist(p.mu, sigma);
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double y = dist(rng);
    const double r = p.mu - y;
    const double s_mu = r / (sigma * sigma);
    const double s_psi = 1.0 - r * r / (sigma * sigma);
    a += s_mu * s_mu;
    b += s_mu * s_psi;
    c += s_psi * s_psi;
  }
  const double n = static_cast<double>(draws);
  FisherMatrix f;
  f.m = {{{a / n, b / n}, {b / n, c / n}}};
  return f;
}

// Exhaustive split search: every (feature, bin) at every node, child sums
// recomputed from the samples directly instead of from histograms.
class BruteForceTree {
 public:
  BruteForceTree(const BinnedDataset& binned, std::span<const double> target,
                 const TreeConfig& cfg)
      : binned_(binned), target_(target), cfg_(cfg) {}

  RegressionTree fit() {
    std::vector<std::size_t> all(binned_.rows);
    std::iota(all.begin(), all.end(), 0);
    node(all, 0);
    return tree_;
  }

 private:
  int node(const std::vector<std::size_t>& samples, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const std::size_t n = samples.size();
    double s = 0.0;
    for (auto i : samples) s += target_[i];

    int best_f = -1;
    std::size_t best_k = 0;
    double best_gain = 0.0;
    if (depth < cfg_.max_depth) {
      for (std::size_t f = 0; f < binned_.cols(); ++f) {
        for (std::size_t k = 0; k + 1 < binned_.bin_count(f); ++k) {
          std::size_t nl = 0, nr = 0;
          double sl = 0.0;
          for (auto i : samples) {
            if (binned_.bins[f][i] <= k) {
              ++nl;
              sl += target_[i];
            } else {
              ++nr;
            }
          }
          const auto min_leaf = static_cast<std::size_t>(cfg_.min_samples_leaf);
          if (nl < min_leaf || nr < min_leaf) continue;
          const double sr = s - sl;
          const double gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(nr) -
                              s * s / static_cast<double>(n);
          if (!(gain > cfg_.min_gain)) continue;
          if (best_f < 0 || gain > best_gain) {
            best_f = static_cast<int>(f);
            best_k = k;
            best_gain = gain;
          }
        }
      }
    }
    if (best_f < 0) {
      tree_.nodes[id].value = s / static_cast<double>(n);
      tree_.nodes[id].cover = n;
      return id;
    }
    std::vector<std::size_t> left, right;
    for (auto i : samples) (binned_.bins[best_f][i] <= best_k ? left : right).push_back(i);
    tree_.nodes[id].feature = best_f;
    tree_.nodes[id].threshold = binned_.thresholds[best_f][best_k];
    tree_.nodes[id].gain = best_gain;
    tree_.nodes[id].cover = n;
    const int l = node(left, depth + 1);
    const int r = node(right, depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  const BinnedDataset& binned_;
  std::span<const double> target_;
  const TreeConfig& cfg_;
  RegressionTree tree_;
};

inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = 0.5 * static_cast<double>(i + j);
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

inline double sample_skewness(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    m2 += (x - m) * (x - m);
    m3 += (x - m) * (x - m) * (x - m);
  }
  m2 /= n;
  m3 /= n;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace sngbm::oracle
