#include "entrokit/density.hpp"

#include "entrokit/parallel.hpp"
#include "entrokit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entrokit {

namespace {

std::vector<double> canonical_rows(const DataSet& data)
{
  const std::size_t n = data.size();
  const std::size_t d = data.dimension();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = data.row(a);
    const auto rb = data.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  std::vector<double> sorted(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(order[i]);
    std::copy(r.begin(), r.end(), sorted.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return sorted;
}

} // namespace

DensityEstimate::DensityEstimate(const DataSet& data, KernelSpec kernel, double bandwidth)
  : data_(canonical_rows(data), data.dimension())
  , kernel_(std::move(kernel))
  , bandwidth_(bandwidth)
{
  if (static_cast<std::size_t>(kernel_.dimension()) != data_.dimension()) {
    throw std::invalid_argument("DensityEstimate: kernel/data dimension mismatch");
  }
  if (!(bandwidth_ > 0.0) || !(bandwidth_ <= 1.0)) {
    throw std::invalid_argument("DensityEstimate: bandwidth must lie in (0, 1]");
  }
  inv_norm_ = 1.0 / (static_cast<double>(data_.size()) *
                     std::pow(bandwidth_, static_cast<double>(data_.dimension())));
  window_ = bandwidth_ * kernel_.eval_radius();
}

double DensityEstimate::sum_terms(std::span<const double> x, std::size_t skip_row) const
{
  const std::size_t d = data_.dimension();
  for (double xi : x) {
    if (!std::isfinite(xi)) {
      throw std::domain_error("DensityEstimate: non-finite evaluation point");
    }
  }
  const std::span<const double> values = data_.values();
  const double inv_h = 1.0 / bandwidth_;

  KahanSum acc;
  std::size_t begin = 0;
  std::size_t end = data_.size();
  if (d == 1) {
    // rows sorted ascending: restrict to the kernel window around x
    const double lo = x[0] - window_;
    const double hi = x[0] + window_;
    begin = static_cast<std::size_t>(
      std::lower_bound(values.begin(), values.end(), lo) - values.begin());
    end = static_cast<std::size_t>(
      std::upper_bound(values.begin(), values.end(), hi) - values.begin());
    for (std::size_t i = begin; i < end; ++i) {
      if (i == skip_row) {
        continue;
      }
      acc.add(kernel_.eval1d((x[0] - values[i]) * inv_h));
    }
    return acc.value();
  }

  std::vector<double> u(d);
  for (std::size_t i = begin; i < end; ++i) {
    if (i == skip_row) {
      continue;
    }
    const double* row = values.data() + i * d;
    double product = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      u[a] = (x[a] - row[a]) * inv_h;
      product *= kernel_.eval1d(u[a]);
      if (product == 0.0) {
        break;
      }
    }
    acc.add(product);
  }
  return acc.value();
}

double DensityEstimate::eval(std::span<const double> x) const
{
  if (x.size() != data_.dimension()) {
    throw std::invalid_argument("DensityEstimate: point dimension mismatch");
  }
  return inv_norm_ * sum_terms(x, data_.size());
}

double DensityEstimate::eval_leave_one_out(std::size_t i) const
{
  const std::size_t n = data_.size();
  if (i >= n) {
    throw std::out_of_range("DensityEstimate: row index out of range");
  }
  if (n < 2) {
    throw std::invalid_argument("DensityEstimate: leave-one-out needs n >= 2");
  }
  const double norm = 1.0 / (static_cast<double>(n - 1) *
                             std::pow(bandwidth_, static_cast<double>(data_.dimension())));
  return norm * sum_terms(data_.row(i), i);
}

std::vector<double> DensityEstimate::eval_grid(const EvaluationGrid& grid) const
{
  if (grid.dimension() != data_.dimension()) {
    throw std::invalid_argument("DensityEstimate: grid dimension mismatch");
  }
  std::vector<double> out(grid.total_points());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> point(grid.dimension());
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, point);
      out[i] = eval(point);
    }
  });
  return out;
}

double smoothed_density_eval(const DensityFn& pdf, const KernelSpec& kernel, double bandwidth,
                             std::span<const double> x,
                             const std::vector<std::vector<double>>& pdf_breakpoints,
                             const QuadratureOptions& opt)
{
  const std::size_t d = static_cast<std::size_t>(kernel.dimension());
  if (x.size() != d) {
    throw std::invalid_argument("smoothed_density_eval: point dimension mismatch");
  }
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("smoothed_density_eval: bandwidth must be positive");
  }
  const double radius = kernel.eval_radius();
  std::vector<double> lo(d, -radius);
  std::vector<double> hi(d, radius);

  // pdf jumps at y = b map to u = (x - b)/h; the double-exponential kernel
  // also kinks at u = 0.
  std::vector<std::vector<double>> cuts(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (kernel.family() == KernelFamily::double_exponential) {
      cuts[a].push_back(0.0);
    }
    if (a < pdf_breakpoints.size()) {
      for (double b : pdf_breakpoints[a]) {
        if (std::isfinite(b)) {
          cuts[a].push_back((x[a] - b) / bandwidth);
        }
      }
    }
  }

  std::vector<double> y(d);
  auto integrand = [&](std::span<const double> u) {
    double k = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      k *= kernel.eval1d(u[a]);
      y[a] = x[a] - bandwidth * u[a];
    }
    if (k == 0.0) {
      return 0.0;
    }
    return k * pdf(y);
  };
  return integrate_box(integrand, lo, hi, cuts, opt);
}

double sup_deviation(const DensityEstimate& estimate, const DensityFn& reference,
                     const EvaluationGrid& grid)
{
  const std::vector<double> values = estimate.eval_grid(grid);
  double sup = 0.0;
  std::vector<double> point(grid.dimension());
  for (std::size_t i = 0; i < values.size(); ++i) {
    grid.point_at(i, point);
    sup = std::max(sup, std::abs(values[i] - reference(point)));
  }
  return sup;
}

} // namespace entrokit
