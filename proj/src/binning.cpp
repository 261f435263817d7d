#include "sngbm/binning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sngbm/errors.hpp"
#include "sngbm/parallel.hpp"

namespace sngbm {

namespace {

// A cut strictly above lo and no larger than hi.
double midpoint(double lo, double hi) {
  const double mid = lo / 2.0 + hi / 2.0;
  return mid > lo ? mid : hi;
}

void check_max_bins(int max_bins) {
  if (max_bins < 2 || max_bins > kMaxBinsLimit) {
    throw ConfigError("max_bins must be in [2, " + std::to_string(kMaxBinsLimit) +
                      "], got " + std::to_string(max_bins));
  }
}

}  // namespace

std::vector<double> feature_thresholds(std::span<const double> column, int max_bins) {
  check_max_bins(max_bins);
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());

  // Distinct values and the number of samples <= each of them.
  std::vector<double> distinct;
  std::vector<std::size_t> cumulative;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (distinct.empty() || sorted[i] != distinct.back()) {
      distinct.push_back(sorted[i]);
      cumulative.push_back(i + 1);
    } else {
      cumulative.back() = i + 1;
    }
  }

  std::vector<double> thresholds;
  if (distinct.size() <= 1) return thresholds;

  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    thresholds.reserve(distinct.size() - 1);
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
      thresholds.push_back(midpoint(distinct[i], distinct[i + 1]));
    }
    return thresholds;
  }

  // Cut after distinct value i puts cumulative[i] samples on the left. For each
  // target rank pick the boundary whose left count is closest (lower on ties).
  // The last distinct value is not a valid cut position.
  const std::size_t n = sorted.size();
  const std::size_t last_cut = distinct.size() - 2;
  std::size_t previous = distinct.size();  // sentinel: no cut yet
  for (int j = 1; j < max_bins; ++j) {
    const double rank = static_cast<double>(n) * j / max_bins;
    auto it = std::lower_bound(cumulative.begin(), cumulative.begin() + last_cut + 1, rank,
                               [](std::size_t c, double r) { return static_cast<double>(c) < r; });
    std::size_t cut = static_cast<std::size_t>(it - cumulative.begin());
    if (cut > last_cut) cut = last_cut;
    if (cut > 0) {
      const double below = rank - static_cast<double>(cumulative[cut - 1]);
      const double above = static_cast<double>(cumulative[cut]) - rank;
      if (below <= above) --cut;
    }
    if (previous != distinct.size() && cut <= previous) continue;
    thresholds.push_back(midpoint(distinct[cut], distinct[cut + 1]));
    previous = cut;
  }
  return thresholds;
}

BinIndex bin_value(std::span<const double> thresholds, double v) {
  if (!std::isfinite(v)) throw InvalidInput("cannot bin a non-finite value");
  // Number of thresholds <= v.
  const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), v);
  return static_cast<BinIndex>(it - thresholds.begin());
}

BinnedDataset build_bins(const Matrix& features,
                         const std::vector<std::string>& feature_names, int max_bins,
                         int threads) {
  check_max_bins(max_bins);
  require_finite(features);
  if (feature_names.size() != features.cols) {
    throw InvalidInput("feature name count does not match column count");
  }

  const std::size_t n = features.rows;
  const std::size_t d = features.cols;
  BinnedDataset out;
  out.rows = n;
  out.bins.resize(d);
  out.thresholds.resize(d);
  out.feature_names = feature_names;

  parallel_for(d, threads, [&](std::size_t f) {
    std::vector<double> column(n);
    for (std::size_t r = 0; r < n; ++r) column[r] = features.at(r, f);
    out.thresholds[f] = feature_thresholds(column, max_bins);
    auto& bins = out.bins[f];
    bins.resize(n);
    for (std::size_t r = 0; r < n; ++r) bins[r] = bin_value(out.thresholds[f], column[r]);
  });
  return out;
}

BinnedDataset build_bins(const Dataset& data, int max_bins, int threads) {
  data.validate();
  return build_bins(data.features, data.feature_names, max_bins, threads);
}

}  // namespace sngbm
