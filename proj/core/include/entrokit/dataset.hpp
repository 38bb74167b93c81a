#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entrokit {

// Row-major n x d sample matrix. Entries must be finite; n >= 1.
class DataSet {
public:
  DataSet(std::vector<double> values, std::size_t dimension);

  std::size_t size() const noexcept { return n_; }       // n
  std::size_t dimension() const noexcept { return d_; }  // d

  std::span<const double> row(std::size_t i) const
  {
    return { values_.data() + i * d_, d_ };
  }
  std::span<const double> values() const noexcept { return values_; }

  // per-axis [min, max]
  std::vector<double> axis_min() const;
  std::vector<double> axis_max() const;

private:
  std::vector<double> values_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
};

} // namespace entrokit
