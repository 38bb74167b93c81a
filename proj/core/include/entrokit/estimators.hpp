#pragma once

#include "entrokit/density.hpp"
#include "entrokit/grid.hpp"
#include "entrokit/models.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace entrokit {

// Vanishing low-density cutoff gamma_n = beta * (log n)^(-alpha).
struct ThresholdSchedule {
  double beta = 0.25;
  double alpha = 1.0;

  // Requires n >= 3 (so log n > 1 and the schedule is nonincreasing).
  double gamma_at(std::size_t n) const;
};

enum class EstimatorKind {
  plugin_integral,
  resubstitution,
  leave_one_out,
};

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string& text);

struct EntropyEstimate {
  double value = 0.0; // nats
  EstimatorKind kind = EstimatorKind::plugin_integral;
  std::size_t n = 0;
  double bandwidth = 0.0;
  double gamma = 0.0;
  double excluded_fraction = 0.0; // mass (plug-in) or count fraction below cutoff
  bool empty_region = false;      // cutoff excluded everything
  bool coarse_grid = false;       // cell diameter exceeded h/2
};

// Riemann sum of -f log f over the cells where the estimate clears the
// cutoff, evaluated on the provided lattice. Cells are node-centered with
// weight = cell volume. Values below gamma contribute exactly 0.
EntropyEstimate entropy_plugin(const DensityEstimate& estimate, double gamma,
                               const EvaluationGrid& grid);

// Same, reusing precomputed grid values of the estimate.
EntropyEstimate entropy_plugin_from_values(std::span<const double> values, double gamma,
                                           const EvaluationGrid& grid,
                                           const DensityEstimate& estimate);

// Cells at or above the cutoff (aligned with the grid, row-major).
std::vector<std::uint8_t> threshold_mask(std::span<const double> values, double gamma);

// -(1/n) sum_i 1{f(X_i) >= gamma} log f(X_i)
EntropyEstimate entropy_resubstitution(const DensityEstimate& estimate, double gamma);

// -(1/n) sum_i log f_{-i}(X_i); no cutoff. Throws IsolatedPointError when any
// leave-one-out density is non-positive.
EntropyEstimate entropy_leave_one_out(const DataSet& data, const KernelSpec& kernel,
                                      double bandwidth);

// Diagnostic centerings (true model required). Both are oriented like the
// estimators themselves, so deviation = |estimate - centering|.
//
// Plug-in: -sum over masked cells of Ef log Ef times cell volume, with
// Ef = smoothed_density_eval and the mask taken from the realized estimate.
double centering_plugin(const DistributionModel& model, const KernelSpec& kernel,
                        double bandwidth, std::span<const std::uint8_t> mask,
                        const EvaluationGrid& grid);

// Resubstitution: -(1/n) sum_i 1{f(X_i) >= gamma} log Ef(X_i). With
// include_self_term, Ef at the sample point carries the conditional
// K(0)/(n h^d) + (n-1)/n * (K_h * f) form instead of the plain convolution.
double centering_resub(const DistributionModel& model, const KernelSpec& kernel, double bandwidth,
                       const DensityEstimate& estimate, double gamma,
                       bool include_self_term = false);

// Leave-one-out diagnostic: -(1/n) sum_i log (K_h * f)(X_i), the exact
// per-point expectation of the leave-one-out density; no cutoff.
double centering_leave_one_out(const DistributionModel& model, const KernelSpec& kernel,
                               double bandwidth, const DensityEstimate& estimate);

} // namespace entrokit
