#include "sngbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sngbm/errors.hpp"

namespace sngbm {

namespace {

const std::vector<double>& original_targets(const EvalInput& input) {
  input.validate();
  if (!input.y_original_scale) {
    throw InvalidInput("metric requires original-scale targets");
  }
  return *input.y_original_scale;
}

double relative_error(NormalParams p, double y) {
  return std::abs(point_prediction(p) - y) / y;
}

}  // namespace

void EvalInput::validate() const {
  if (y_model_scale.size() != params.size()) {
    throw InvalidInput("prediction count does not match model-scale target count");
  }
  if (params.empty()) throw InvalidInput("evaluation needs at least one sample");
  if (y_original_scale) {
    if (y_original_scale->size() != params.size()) {
      throw InvalidInput("prediction count does not match original-scale target count");
    }
    for (std::size_t i = 0; i < y_original_scale->size(); ++i) {
      const double y = (*y_original_scale)[i];
      if (!(y > 0.0) || !std::isfinite(y)) {
        throw InvalidInput("original-scale target at row " + std::to_string(i + 1) +
                           " must be finite and positive");
      }
    }
  }
}

double mape(const EvalInput& input) {
  const auto& y = original_targets(input);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) total += relative_error(input.params[i], y[i]);
  return total / static_cast<double>(y.size());
}

double accuracy_within(const EvalInput& input, double tol) {
  const auto& y = original_targets(input);
  if (!(tol >= 0.0)) throw InvalidInput("tolerance must be non-negative");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (relative_error(input.params[i], y[i]) <= tol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

double nll_mean(const EvalInput& input) {
  input.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < input.params.size(); ++i) {
    total += nll_point(input.params[i], input.y_model_scale[i]);
  }
  return total / static_cast<double>(input.params.size());
}

CalibrationReport calibration_report(const EvalInput& input, int buckets) {
  const auto& y = original_targets(input);
  const std::size_t n = y.size();
  if (buckets < 2 || static_cast<std::size_t>(buckets) > n) {
    throw InvalidInput("bucket count must be in [2, " + std::to_string(n) + "], got " +
                       std::to_string(buckets));
  }

  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::exp(input.params[i].psi);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });

  const auto k = static_cast<std::size_t>(buckets);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;

  CalibrationReport report;
  report.buckets.reserve(k);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    CalibrationBucket bucket;
    bucket.count = size;
    bucket.sigma_min = sigma[order[pos]];
    bucket.sigma_max = sigma[order[pos + size - 1]];
    double err = 0.0;
    double nll = 0.0;
    std::size_t hits = 0;
    for (std::size_t j = pos; j < pos + size; ++j) {
      const std::size_t i = order[j];
      const double e = relative_error(input.params[i], y[i]);
      err += e;
      if (e <= kDefaultAccuracyTolerance) ++hits;
      nll += nll_point(input.params[i], input.y_model_scale[i]);
    }
    bucket.mape = err / static_cast<double>(size);
    bucket.accuracy = static_cast<double>(hits) / static_cast<double>(size);
    bucket.mean_nll = nll / static_cast<double>(size);
    report.buckets.push_back(bucket);
    pos += size;
  }
  return report;
}

}  // namespace sngbm
