#pragma once

#include "entrokit/dataset.hpp"
#include "entrokit/grid.hpp"
#include "entrokit/kernels.hpp"
#include "entrokit/quadrature.hpp"

#include <functional>
#include <span>
#include <vector>

namespace entrokit {

using DensityFn = std::function<double(std::span<const double>)>;

// Fixed (data, kernel, bandwidth) triple, evaluation only.
//
// Rows are stored in canonical (lexicographically sorted) order, so every
// sum runs in a data-order-independent sequence: permuting input rows leaves
// all results bit-identical. d = 1 evaluation prunes to the kernel window.
class DensityEstimate {
public:
  DensityEstimate(const DataSet& data, KernelSpec kernel, double bandwidth);

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t dimension() const noexcept { return data_.dimension(); }
  double bandwidth() const noexcept { return bandwidth_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  const DataSet& data() const noexcept { return data_; } // canonical order

  // f_{n,h}(x) = (n h^d)^-1 sum_i K((x - X_i)/h). Compensated summation in
  // canonical row order. Throws std::domain_error on non-finite input.
  double eval(std::span<const double> x) const;

  // Elementwise eval over the grid, row-major; chunked across workers.
  std::vector<double> eval_grid(const EvaluationGrid& grid) const;

  // Leave-one-out value at sample row i (canonical order), normalized by
  // (n - 1) h^d.
  double eval_leave_one_out(std::size_t i) const;

private:
  DataSet data_;
  KernelSpec kernel_;
  double bandwidth_;
  double inv_norm_;     // 1 / (n h^d)
  double window_;       // h * eval radius

  double sum_terms(std::span<const double> x, std::size_t skip_row) const;
};

// Exact expectation of the kernel estimate under `pdf`:
//   ∫ h^-d K((x - y)/h) pdf(y) dy = ∫ K(u) pdf(x - h u) du
// by adaptive quadrature over the kernel's evaluation box. `pdf_breakpoints`
// lists per-axis discontinuity locations of pdf (support faces), which are
// mapped into u-space so each quadrature segment stays smooth.
double smoothed_density_eval(const DensityFn& pdf, const KernelSpec& kernel, double bandwidth,
                             std::span<const double> x,
                             const std::vector<std::vector<double>>& pdf_breakpoints = {},
                             const QuadratureOptions& opt = {});

// max over grid nodes of |f_{n,h}(x) - reference(x)|
double sup_deviation(const DensityEstimate& estimate, const DensityFn& reference,
                     const EvaluationGrid& grid);

} // namespace entrokit
