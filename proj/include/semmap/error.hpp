#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semmap {

// Base class for data errors raised by the library. The CLI maps these (and
// std::invalid_argument / std::out_of_range) to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed matrix or graph input. Row and column are 1-based positions in
// the source text (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column);

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

// Two objects that must share a node count do not.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected,
                    std::size_t actual);
};

// Exhaustive subset enumeration was requested on a graph above the cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace semmap
