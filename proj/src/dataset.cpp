#include "sngbm/dataset.hpp"

#include <cmath>

#include "sngbm/errors.hpp"

namespace sngbm {

void require_finite(const Matrix& m) {
  if (m.values.size() != m.rows * m.cols) {
    throw InvalidInput("matrix storage does not match its shape");
  }
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (!std::isfinite(m.at(r, c))) {
        throw DataError("non-finite feature value at row " + std::to_string(r + 1) +
                            ", column " + std::to_string(c),
                        r + 1, c);
      }
    }
  }
}

void Dataset::validate() const {
  if (features.cols < 1) throw InvalidInput("dataset needs at least one feature");
  if (features.rows < 2) throw InvalidInput("dataset needs at least two rows");
  if (targets.size() != features.rows) {
    throw InvalidInput("target length " + std::to_string(targets.size()) +
                       " does not match row count " + std::to_string(features.rows));
  }
  if (feature_names.size() != features.cols) {
    throw InvalidInput("feature name count does not match column count");
  }
  require_finite(features);
  for (std::size_t r = 0; r < targets.size(); ++r) {
    if (!std::isfinite(targets[r])) {
      throw DataError("non-finite target at row " + std::to_string(r + 1), r + 1,
                      features.cols);
    }
  }
}

}  // namespace sngbm
