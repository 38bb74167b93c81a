#pragma once

#include "entrokit/dataset.hpp"
#include "entrokit/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace entrokit {

// Regular evaluation lattice. Nodes include both endpoints per axis and are
// enumerated row-major with the last axis fastest; each node owns a cell of
// volume = product of spacings.
class EvaluationGrid {
public:
  EvaluationGrid(std::vector<double> lower, std::vector<double> upper,
                 std::vector<std::size_t> points_per_axis);

  static EvaluationGrid uniform1d(double lower, double upper, std::size_t points);

  // Data range padded by bandwidth * kernel eval radius per axis.
  // points_per_axis == 0 picks the default (401 for d = 1, 101 otherwise).
  static EvaluationGrid for_estimate(const DataSet& data, const KernelSpec& kernel,
                                     double bandwidth, std::size_t points_per_axis = 0);

  std::size_t dimension() const noexcept { return lower_.size(); }
  std::size_t total_points() const noexcept { return total_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::span<const double> spacing() const noexcept { return spacing_; }
  std::span<const std::size_t> points_per_axis() const noexcept { return points_; }

  double cell_volume() const noexcept;
  double max_spacing() const noexcept;

  void point_at(std::size_t flat_index, std::span<double> out) const;
  std::vector<double> point_at(std::size_t flat_index) const;

  static constexpr std::size_t kMaxPoints = 4'000'000;

private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> points_;
  std::vector<double> spacing_;
  std::size_t total_ = 0;
};

} // namespace entrokit
