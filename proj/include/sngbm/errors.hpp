#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sngbm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or data handed to a library call.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Rejected configuration (out-of-range hyperparameters and the like).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Ingestion failure tied to a cell of the input table. Rows are 1-based data
// rows (the header is row 0); columns are 0-based.
class DataError : public InvalidInput {
 public:
  DataError(const std::string& what, std::size_t row, std::size_t column)
      : InvalidInput(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

// Model document could not be loaded. path() names the offending field,
// e.g. "iterations[3].tree_psi[0].threshold".
class LoadError : public Error {
 public:
  LoadError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sngbm
