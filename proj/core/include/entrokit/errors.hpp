#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entrokit {

// Iterative refinement (quadrature, grid doubling) stopped at the subdivision
// cap before reaching the requested tolerance.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double achieved_tolerance)
    : std::runtime_error(what)
    , achieved_tolerance_(achieved_tolerance)
  {
  }

  double achieved_tolerance() const noexcept { return achieved_tolerance_; }

private:
  double achieved_tolerance_;
};

// Leave-one-out density was non-positive at some sample points (compact
// kernel around an isolated observation); carries the offending row indices.
class IsolatedPointError : public std::runtime_error {
public:
  IsolatedPointError(const std::string& what, std::vector<std::size_t> indices)
    : std::runtime_error(what)
    , indices_(std::move(indices))
  {
  }

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
  std::vector<std::size_t> indices_;
};

// CSV ingestion failure with 1-based row/column location.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t row, std::size_t column = 0)
    : std::runtime_error(what)
    , row_(row)
    , column_(column)
  {
  }

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

} // namespace entrokit
