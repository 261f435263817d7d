#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sngbm/dist_normal.hpp"

namespace sngbm {

inline constexpr double kDefaultAccuracyTolerance = 0.3;
inline constexpr int kDefaultBuckets = 10;

struct EvalInput {
  std::vector<NormalParams> params;
  // Targets on the scale the model was trained on.
  std::vector<double> y_model_scale;
  // Strictly positive original-scale targets, present when the model was
  // trained on ln(y).
  std::optional<std::vector<double>> y_original_scale;

  void validate() const;
};

/// Mean of |exp(mu) - y| / y over original-scale targets.
double mape(const EvalInput& input);

/// Fraction of samples with |exp(mu) - y| / y <= tol.
double accuracy_within(const EvalInput& input, double tol = kDefaultAccuracyTolerance);

double nll_mean(const EvalInput& input);

struct CalibrationBucket {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::size_t count = 0;
  double mape = 0.0;
  double accuracy = 0.0;
  double mean_nll = 0.0;
};

struct CalibrationReport {
  std::vector<CalibrationBucket> buckets;

  std::size_t bucket_count() const { return buckets.size(); }
};

/// Samples sorted by sigma = exp(psi) ascending (ties by index) and cut into
/// K contiguous buckets; the first n mod K buckets get one extra sample.
CalibrationReport calibration_report(const EvalInput& input, int buckets = kDefaultBuckets);

}  // namespace sngbm
