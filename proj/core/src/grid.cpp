#include "entrokit/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace entrokit {

EvaluationGrid::EvaluationGrid(std::vector<double> lower, std::vector<double> upper,
                               std::vector<std::size_t> points_per_axis)
  : lower_(std::move(lower))
  , upper_(std::move(upper))
  , points_(std::move(points_per_axis))
{
  const std::size_t d = lower_.size();
  if (d == 0 || upper_.size() != d || points_.size() != d) {
    throw std::invalid_argument("EvaluationGrid: inconsistent axis counts");
  }
  total_ = 1;
  spacing_.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (!(std::isfinite(lower_[a]) && std::isfinite(upper_[a]) && lower_[a] < upper_[a])) {
      throw std::invalid_argument("EvaluationGrid: need lower < upper per axis");
    }
    if (points_[a] < 2) {
      throw std::invalid_argument("EvaluationGrid: need at least 2 points per axis");
    }
    if (total_ > kMaxPoints / points_[a]) {
      throw std::length_error("EvaluationGrid: total point count exceeds cap");
    }
    total_ *= points_[a];
    spacing_[a] = (upper_[a] - lower_[a]) / static_cast<double>(points_[a] - 1);
  }
}

EvaluationGrid EvaluationGrid::uniform1d(double lower, double upper, std::size_t points)
{
  return EvaluationGrid({ lower }, { upper }, { points });
}

EvaluationGrid EvaluationGrid::for_estimate(const DataSet& data, const KernelSpec& kernel,
                                            double bandwidth, std::size_t points_per_axis)
{
  const std::size_t d = data.dimension();
  if (static_cast<std::size_t>(kernel.dimension()) != d) {
    throw std::invalid_argument("EvaluationGrid: kernel/data dimension mismatch");
  }
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("EvaluationGrid: bandwidth must be positive");
  }
  if (points_per_axis == 0) {
    points_per_axis = (d == 1) ? 401 : 101;
  }
  const double pad = bandwidth * kernel.eval_radius();
  std::vector<double> lo = data.axis_min();
  std::vector<double> hi = data.axis_max();
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] -= pad;
    hi[a] += pad;
  }
  return EvaluationGrid(std::move(lo), std::move(hi),
                        std::vector<std::size_t>(d, points_per_axis));
}

double EvaluationGrid::cell_volume() const noexcept
{
  double v = 1.0;
  for (double s : spacing_) {
    v *= s;
  }
  return v;
}

double EvaluationGrid::max_spacing() const noexcept
{
  double m = 0.0;
  for (double s : spacing_) {
    m = std::max(m, s);
  }
  return m;
}

void EvaluationGrid::point_at(std::size_t flat_index, std::span<double> out) const
{
  const std::size_t d = lower_.size();
  for (std::size_t a = d; a-- > 0;) {
    const std::size_t k = flat_index % points_[a];
    flat_index /= points_[a];
    out[a] = lower_[a] + static_cast<double>(k) * spacing_[a];
  }
}

std::vector<double> EvaluationGrid::point_at(std::size_t flat_index) const
{
  std::vector<double> out(lower_.size());
  point_at(flat_index, out);
  return out;
}

} // namespace entrokit
