#include "sngbm/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "sngbm/errors.hpp"

namespace sngbm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(std::string_view text, std::size_t row, std::size_t col) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                        ": cannot parse '" + std::string(text) + "' as a number",
                    row, col);
  }
  if (!std::isfinite(value)) {
    throw DataError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                        ": non-finite value",
                    row, col);
  }
  return value;
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidInput("column '" + name + "' not found");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV: missing header", 0, 0);
  for (const auto cell : split(line)) {
    if (cell.empty()) throw DataError("empty column name in header", 0, table.header.size());
    table.header.emplace_back(cell);
  }
  const std::size_t cols = table.header.size();
  table.cells.cols = cols;

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split(line);
    if (cells.size() != cols) {
      throw DataError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(cols),
                      row, std::min(cells.size(), cols));
    }
    for (std::size_t c = 0; c < cols; ++c) table.cells.values.push_back(parse_cell(cells[c], row, c));
  }
  table.cells.rows = row;
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_csv(in);
}

Matrix select_columns(const CsvTable& table, const std::vector<std::string>& names) {
  std::vector<std::string> missing;
  std::vector<std::size_t> index;
  for (const auto& name : names) {
    if (table.has_column(name)) {
      index.push_back(table.column_index(name));
    } else {
      missing.push_back(name);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw InvalidInput("missing columns: " + list);
  }
  Matrix out(table.cells.rows, names.size());
  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t c = 0; c < index.size(); ++c) out.at(r, c) = table.cells.at(r, index[c]);
  }
  return out;
}

Dataset dataset_from_csv(const CsvTable& table, const std::string& target, bool log_transform) {
  const std::size_t target_col = table.column_index(target);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != target_col) names.push_back(table.header[c]);
  }

  Dataset data;
  data.features = select_columns(table, names);
  data.feature_names = std::move(names);
  data.targets.resize(table.cells.rows);
  for (std::size_t r = 0; r < table.cells.rows; ++r) {
    double y = table.cells.at(r, target_col);
    if (log_transform) {
      if (!(y > 0.0)) {
        throw DataError("row " + std::to_string(r + 1) +
                            ": target must be positive for the log transform",
                        r + 1, target_col);
      }
      y = std::log(y);
    }
    data.targets[r] = y;
  }
  return data;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

}  // namespace sngbm
