#include "entrokit/estimators.hpp"

#include "entrokit/errors.hpp"
#include "entrokit/parallel.hpp"
#include "entrokit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entrokit {

namespace {

// Smoothed-density values at every sample row of the estimate (canonical
// order), optionally with the conditional self-term.
std::vector<double> smoothed_at_samples(const DistributionModel& model, const KernelSpec& kernel,
                                        double bandwidth, const DensityEstimate& estimate,
                                        bool include_self_term)
{
  const DataSet& data = estimate.data();
  const std::size_t n = data.size();
  const auto cuts = model.pdf_breakpoints();
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double value = smoothed_density_eval(model.pdf_fn(), kernel, bandwidth, data.row(i), cuts);
      if (include_self_term) {
        const double d = static_cast<double>(data.dimension());
        const double self = std::pow(kernel.eval1d(0.0), d) /
                            (static_cast<double>(n) * std::pow(bandwidth, d));
        value = self + (static_cast<double>(n - 1) / static_cast<double>(n)) * value;
      }
      out[i] = value;
    }
  });
  return out;
}

} // namespace

double ThresholdSchedule::gamma_at(std::size_t n) const
{
  if (!(beta > 0.0)) {
    throw std::invalid_argument("ThresholdSchedule: beta must be positive");
  }
  if (alpha < 0.0) {
    throw std::invalid_argument("ThresholdSchedule: alpha must be nonnegative");
  }
  if (n < 3) {
    throw std::domain_error("ThresholdSchedule: n must be >= 3");
  }
  return beta * std::pow(std::log(static_cast<double>(n)), -alpha);
}

std::string to_string(EstimatorKind kind)
{
  switch (kind) {
    case EstimatorKind::plugin_integral:
      return "plugin_integral";
    case EstimatorKind::resubstitution:
      return "resubstitution";
    case EstimatorKind::leave_one_out:
      return "leave_one_out";
  }
  return "?";
}

EstimatorKind estimator_kind_from_string(const std::string& text)
{
  if (text == "plugin_integral" || text == "plugin") {
    return EstimatorKind::plugin_integral;
  }
  if (text == "resubstitution" || text == "resub") {
    return EstimatorKind::resubstitution;
  }
  if (text == "leave_one_out" || text == "loo") {
    return EstimatorKind::leave_one_out;
  }
  throw std::invalid_argument("unknown estimator kind '" + text + "'");
}

EntropyEstimate entropy_plugin(const DensityEstimate& estimate, double gamma,
                               const EvaluationGrid& grid)
{
  const std::vector<double> values = estimate.eval_grid(grid);
  return entropy_plugin_from_values(values, gamma, grid, estimate);
}

EntropyEstimate entropy_plugin_from_values(std::span<const double> values, double gamma,
                                           const EvaluationGrid& grid,
                                           const DensityEstimate& estimate)
{
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("entropy_plugin: gamma must be positive");
  }
  if (values.size() != grid.total_points()) {
    throw std::invalid_argument("entropy_plugin: values/grid size mismatch");
  }

  const double cell = grid.cell_volume();
  KahanSum integral;
  KahanSum excluded;
  std::size_t kept = 0;
  for (double f : values) {
    if (f >= gamma) {
      integral.add(-f * std::log(f) * cell);
      ++kept;
    } else {
      excluded.add(f * cell);
    }
  }

  EntropyEstimate out;
  out.kind = EstimatorKind::plugin_integral;
  out.n = estimate.size();
  out.bandwidth = estimate.bandwidth();
  out.gamma = gamma;
  out.coarse_grid = grid.max_spacing() > 0.5 * estimate.bandwidth();
  if (kept == 0) {
    out.value = 0.0;
    out.excluded_fraction = 1.0;
    out.empty_region = true;
    return out;
  }
  out.value = integral.value();
  out.excluded_fraction = std::clamp(excluded.value(), 0.0, 1.0);
  return out;
}

std::vector<std::uint8_t> threshold_mask(std::span<const double> values, double gamma)
{
  std::vector<std::uint8_t> mask(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    mask[i] = values[i] >= gamma ? 1 : 0;
  }
  return mask;
}

EntropyEstimate entropy_resubstitution(const DensityEstimate& estimate, double gamma)
{
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("entropy_resubstitution: gamma must be positive");
  }
  const std::size_t n = estimate.size();
  std::vector<double> at_sample(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      at_sample[i] = estimate.eval(estimate.data().row(i));
    }
  });

  KahanSum sum;
  std::size_t kept = 0;
  for (double f : at_sample) {
    if (f >= gamma) {
      sum.add(std::log(f));
      ++kept;
    }
  }

  EntropyEstimate out;
  out.kind = EstimatorKind::resubstitution;
  out.n = n;
  out.bandwidth = estimate.bandwidth();
  out.gamma = gamma;
  out.excluded_fraction = static_cast<double>(n - kept) / static_cast<double>(n);
  if (kept == 0) {
    out.value = 0.0;
    out.empty_region = true;
    return out;
  }
  out.value = -sum.value() / static_cast<double>(n);
  return out;
}

EntropyEstimate entropy_leave_one_out(const DataSet& data, const KernelSpec& kernel,
                                      double bandwidth)
{
  if (data.size() < 2) {
    throw std::invalid_argument("entropy_leave_one_out: need n >= 2");
  }
  const DensityEstimate estimate(data, kernel, bandwidth);
  const std::size_t n = estimate.size();
  std::vector<double> at_sample(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      at_sample[i] = estimate.eval_leave_one_out(i);
    }
  });

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(at_sample[i] > 0.0)) {
      bad.push_back(i);
    }
  }
  if (!bad.empty()) {
    throw IsolatedPointError(
      "entropy_leave_one_out: non-positive leave-one-out density at " +
        std::to_string(bad.size()) + " sample point(s)",
      std::move(bad));
  }

  KahanSum sum;
  for (double f : at_sample) {
    sum.add(std::log(f));
  }

  EntropyEstimate out;
  out.kind = EstimatorKind::leave_one_out;
  out.n = n;
  out.bandwidth = bandwidth;
  out.gamma = 0.0;
  out.excluded_fraction = 0.0;
  out.value = -sum.value() / static_cast<double>(n);
  return out;
}

double centering_plugin(const DistributionModel& model, const KernelSpec& kernel,
                        double bandwidth, std::span<const std::uint8_t> mask,
                        const EvaluationGrid& grid)
{
  if (mask.size() != grid.total_points()) {
    throw std::invalid_argument("centering_plugin: mask/grid size mismatch");
  }
  const auto cuts = model.pdf_breakpoints();
  const double cell = grid.cell_volume();

  std::vector<double> terms(mask.size(), 0.0);
  parallel_for(mask.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> point(grid.dimension());
    for (std::size_t i = begin; i < end; ++i) {
      if (mask[i] == 0) {
        continue;
      }
      grid.point_at(i, point);
      const double ef = smoothed_density_eval(model.pdf_fn(), kernel, bandwidth, point, cuts);
      terms[i] = ef > 0.0 ? -ef * std::log(ef) * cell : 0.0;
    }
  });
  KahanSum sum;
  for (double t : terms) {
    sum.add(t);
  }
  return sum.value();
}

double centering_resub(const DistributionModel& model, const KernelSpec& kernel, double bandwidth,
                       const DensityEstimate& estimate, double gamma, bool include_self_term)
{
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("centering_resub: gamma must be positive");
  }
  const std::size_t n = estimate.size();
  std::vector<double> f_hat(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      f_hat[i] = estimate.eval(estimate.data().row(i));
    }
  });
  const std::vector<double> smoothed =
    smoothed_at_samples(model, kernel, bandwidth, estimate, include_self_term);

  KahanSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    if (f_hat[i] < gamma) {
      continue;
    }
    if (!(smoothed[i] > 0.0)) {
      throw NumericError("centering_resub: smoothed density non-positive at a sample point",
                         smoothed[i]);
    }
    sum.add(std::log(smoothed[i]));
  }
  return -sum.value() / static_cast<double>(n);
}

double centering_leave_one_out(const DistributionModel& model, const KernelSpec& kernel,
                               double bandwidth, const DensityEstimate& estimate)
{
  const std::vector<double> smoothed =
    smoothed_at_samples(model, kernel, bandwidth, estimate, false);
  KahanSum sum;
  for (double ef : smoothed) {
    if (!(ef > 0.0)) {
      throw NumericError("centering_leave_one_out: smoothed density non-positive", ef);
    }
    sum.add(std::log(ef));
  }
  return -sum.value() / static_cast<double>(estimate.size());
}

} // namespace entrokit
