#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sngbm/dataset.hpp"

namespace sngbm {

using BinIndex = std::uint8_t;

inline constexpr int kMaxBinsLimit = 256;
inline constexpr int kDefaultMaxBins = 64;

/// Column-major bin indices with the raw-value cut points that produced them.
///
/// For feature f with thresholds t (strictly increasing, size B_f - 1), a value
/// v lands in bin 0 when v < t[0], bin k when t[k-1] <= v < t[k], and bin
/// B_f - 1 when v >= t.back().
struct BinnedDataset {
  std::size_t rows = 0;
  std::vector<std::vector<BinIndex>> bins;
  std::vector<std::vector<double>> thresholds;
  std::vector<std::string> feature_names;

  std::size_t cols() const { return bins.size(); }
  std::size_t bin_count(std::size_t feature) const {
    return thresholds[feature].size() + 1;
  }
};

/// Quantile discretization. Features with at most max_bins distinct values get
/// one bin per value; otherwise cut points are placed at the distinct-value
/// boundaries closest to the j * n / max_bins sample ranks. Every threshold
/// is the midpoint of two adjacent distinct training values.
BinnedDataset build_bins(const Dataset& data, int max_bins, int threads = 1);

/// Same as above for a bare feature matrix.
BinnedDataset build_bins(const Matrix& features,
                         const std::vector<std::string>& feature_names,
                         int max_bins, int threads = 1);

std::vector<double> feature_thresholds(std::span<const double> column, int max_bins);

BinIndex bin_value(std::span<const double> thresholds, double v);

}  // namespace sngbm
