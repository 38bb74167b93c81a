#pragma once

#include "entrokit/density.hpp"
#include "entrokit/estimators.hpp"
#include "entrokit/grid.hpp"
#include "entrokit/models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entrokit {

// Geometric bandwidth ladder on [A n^-delta, B n^-delta], clipped to (0, 1].
struct BandwidthGrid {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> values; // strictly increasing, endpoints included
};

BandwidthGrid bandwidth_grid(std::size_t n, double A, double B, double delta, std::size_t count,
                             std::size_t dimension = 1);

enum class DeviationDenominator {
  log_inv_h_or_loglog_n, // max(log(1/h), log log n)
  two_log_inv_h,         // 2 log(1/h); requires h < 1
};

// sqrt(n h gamma^p) * deviation / sqrt(denominator), with p = 4 for the
// plug-in integral and p = 2 for the resubstitution/leave-one-out kinds.
// Requires n > e^e so that log log n stays positive.
double deviation_statistic(EstimatorKind kind, std::size_t n, double h, double gamma,
                           double deviation,
                           DeviationDenominator denominator = DeviationDenominator::log_inv_h_or_loglog_n);

// Data-driven interval H +/- half_width around the plug-in estimate:
//   zeta_hat = max over grid nodes inside the support proxy of
//              sqrt(f_hat(x) * ∫K^2)
//   half_width = sqrt((log(1/h) v log log n) / (n h gamma^4)) * zeta_hat
struct CertaintyInterval {
  double center = 0.0;
  double half_width = 0.0;
  double zeta_hat = 0.0;
  double h = 0.0;
  std::size_t n = 0;
  double gamma = 0.0;

  double lower() const noexcept { return center - half_width; }
  double upper() const noexcept { return center + half_width; }
  bool contains(double value) const noexcept { return value >= lower() && value <= upper(); }
};

CertaintyInterval certainty_interval(const DensityEstimate& estimate, double gamma,
                                     const EvaluationGrid& grid, const SupportBox& support_proxy);

CertaintyInterval certainty_interval_from_values(std::span<const double> values, double gamma,
                                                 const EvaluationGrid& grid,
                                                 const SupportBox& support_proxy,
                                                 const DensityEstimate& estimate);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  EstimatorKind kind = EstimatorKind::plugin_integral;
  double h = 0.0;
  double gamma = 0.0;
  double estimate = 0.0;
  std::optional<double> centering;
  std::optional<double> deviation;            // |estimate - centering|
  std::optional<double> normalized_deviation; // deviation_statistic of the above
  double excluded_fraction = 0.0;
  bool empty_region = false;
  bool coarse_grid = false;
  std::optional<double> interval_half_width; // plug-in rows when intervals are on
  std::optional<double> interval_zeta;
  bool failed = false;
  std::string error;
};

struct SweepSup {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  EstimatorKind kind = EstimatorKind::plugin_integral;
  double sup_normalized_deviation = 0.0;
};

struct CoverageCell {
  std::size_t n = 0;
  double h = 0.0;
  std::size_t contained = 0;
  std::size_t total = 0;

  double rate() const noexcept
  {
    return total == 0 ? 0.0 : static_cast<double>(contained) / static_cast<double>(total);
  }
};

struct SweepConfig {
  std::string model;
  std::string kernel;
  double bandwidth_lower = 0.0;
  double bandwidth_upper = 0.0;
  std::size_t bandwidth_count = 0;
  double beta = 0.0;
  double alpha = 0.0;
  std::vector<std::size_t> n_list;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> estimators;
  std::size_t grid_points = 0;
  bool with_centerings = true;
  bool with_intervals = true;
};

struct SweepReport {
  SweepConfig config;
  std::optional<double> true_entropy;
  std::vector<SweepRow> rows;      // sorted by (n, seed, kind, h)
  std::vector<SweepSup> sups;      // per (n, seed, kind), kinds with centerings
  std::vector<CoverageCell> coverage; // per (n, h), plug-in intervals vs truth
};

struct SweepOptions {
  std::size_t grid_points = 0; // 0 = default per dimension
  bool with_centerings = true;
  bool with_intervals = true;
  DeviationDenominator denominator = DeviationDenominator::log_inv_h_or_loglog_n;
};

// For each (n, seed): one sample, every requested estimator at every h with
// gamma = schedule(n); centerings/deviations against the model; per-row
// failures are flagged, not fatal. Deterministic for fixed seeds.
SweepReport sweep(const DistributionModel& model, const KernelSpec& kernel,
                  const BandwidthGrid& bandwidths, const ThresholdSchedule& schedule,
                  const std::vector<std::size_t>& n_list, const std::vector<std::uint64_t>& seeds,
                  const std::vector<EstimatorKind>& estimators, const SweepOptions& options = {});

// Bandwidth ladder of sup |K_h * f - f| over the grid, plus the log-log slope
// when at least three bandwidths are given.
struct BiasProbeResult {
  std::vector<std::pair<double, double>> sup_bias; // (h, sup)
  std::optional<double> slope;
};

BiasProbeResult bias_probe(const DistributionModel& model, const KernelSpec& kernel,
                           const std::vector<double>& h_list, const EvaluationGrid& grid);

} // namespace entrokit
