#include "semmap/error.hpp"

namespace semmap {

ParseError::ParseError(const std::string& what, std::size_t row,
                       std::size_t column)
    : Error(what), row_(row), column_(column) {}

DimensionMismatch::DimensionMismatch(const std::string& what,
                                     std::size_t expected, std::size_t actual)
    : Error(what + ": expected " + std::to_string(expected) + " nodes, got " +
            std::to_string(actual)) {}

}  // namespace semmap
