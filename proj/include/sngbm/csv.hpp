#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sngbm/dataset.hpp"

namespace sngbm {

/// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> header;
  Matrix cells;

  std::size_t column_index(const std::string& name) const;  // throws InvalidInput
  bool has_column(const std::string& name) const;
};

/// Every cell must parse as a finite decimal; failures throw DataError with
/// the 1-based data row and 0-based column.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Splits `target` off as the label. With log_transform the label becomes
/// ln(y) and non-positive values throw DataError naming the row.
Dataset dataset_from_csv(const CsvTable& table, const std::string& target,
                         bool log_transform);

/// Extracts the named columns (in that order). Throws InvalidInput listing
/// missing names.
Matrix select_columns(const CsvTable& table, const std::vector<std::string>& names);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace sngbm
