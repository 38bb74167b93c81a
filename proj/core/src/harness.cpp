#include "entrokit/harness.hpp"

#include "entrokit/errors.hpp"
#include "entrokit/parallel.hpp"
#include "entrokit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace entrokit {

BandwidthGrid bandwidth_grid(std::size_t n, double A, double B, double delta, std::size_t count,
                             std::size_t dimension)
{
  if (!(A > 0.0 && A < B)) {
    throw std::invalid_argument("bandwidth_grid: need 0 < A < B");
  }
  if (dimension == 0) {
    throw std::invalid_argument("bandwidth_grid: dimension must be >= 1");
  }
  const double delta_min = 1.0 / (static_cast<double>(dimension) + 4.0);
  if (!(delta >= delta_min && delta < 1.0)) {
    throw std::invalid_argument("bandwidth_grid: delta must lie in [1/(d+4), 1)");
  }
  if (count < 2) {
    throw std::invalid_argument("bandwidth_grid: count must be >= 2");
  }
  if (n < 2) {
    throw std::invalid_argument("bandwidth_grid: n must be >= 2");
  }
  const double scale = std::pow(static_cast<double>(n), -delta);
  double lo = A * scale;
  double hi = std::min(B * scale, 1.0);
  if (!(lo > 0.0) || !(lo < hi)) {
    throw std::domain_error("bandwidth_grid: empty after clipping to (0, 1]");
  }
  BandwidthGrid grid;
  grid.lower = lo;
  grid.upper = hi;
  grid.values.resize(count);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    grid.values[i] = lo * std::exp(ratio * t);
  }
  grid.values.front() = lo;
  grid.values.back() = hi;
  return grid;
}

double deviation_statistic(EstimatorKind kind, std::size_t n, double h, double gamma,
                           double deviation, DeviationDenominator denominator)
{
  if (static_cast<double>(n) <= std::exp(std::exp(1.0))) {
    throw std::domain_error("deviation_statistic: n must exceed e^e");
  }
  if (!(h > 0.0 && h <= 1.0)) {
    throw std::invalid_argument("deviation_statistic: h must lie in (0, 1]");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("deviation_statistic: gamma must be positive");
  }
  if (!(deviation >= 0.0)) {
    throw std::invalid_argument("deviation_statistic: deviation must be nonnegative");
  }
  const double p = kind == EstimatorKind::plugin_integral ? 4.0 : 2.0;
  double den = 0.0;
  switch (denominator) {
    case DeviationDenominator::log_inv_h_or_loglog_n:
      den = std::max(std::log(1.0 / h), std::log(std::log(static_cast<double>(n))));
      break;
    case DeviationDenominator::two_log_inv_h:
      if (!(h < 1.0)) {
        throw std::invalid_argument("deviation_statistic: the 2 log(1/h) form needs h < 1");
      }
      den = 2.0 * std::log(1.0 / h);
      break;
  }
  return std::sqrt(static_cast<double>(n) * h * std::pow(gamma, p)) * deviation / std::sqrt(den);
}

CertaintyInterval certainty_interval(const DensityEstimate& estimate, double gamma,
                                     const EvaluationGrid& grid, const SupportBox& support_proxy)
{
  const std::vector<double> values = estimate.eval_grid(grid);
  return certainty_interval_from_values(values, gamma, grid, support_proxy, estimate);
}

CertaintyInterval certainty_interval_from_values(std::span<const double> values, double gamma,
                                                 const EvaluationGrid& grid,
                                                 const SupportBox& support_proxy,
                                                 const DensityEstimate& estimate)
{
  if (support_proxy.lower.size() != grid.dimension()) {
    throw std::invalid_argument("certainty_interval: support/grid dimension mismatch");
  }
  const EntropyEstimate center = entropy_plugin_from_values(values, gamma, grid, estimate);

  double zeta_sq = 0.0;
  std::size_t inside = 0;
  std::vector<double> point(grid.dimension());
  for (std::size_t i = 0; i < values.size(); ++i) {
    grid.point_at(i, point);
    if (!support_proxy.contains(point)) {
      continue;
    }
    ++inside;
    zeta_sq = std::max(zeta_sq, values[i]);
  }
  if (inside == 0) {
    throw std::domain_error("certainty_interval: support proxy does not meet the grid");
  }
  const double zeta = std::sqrt(std::max(zeta_sq, 0.0) * estimate.kernel().sq_integral());

  const std::size_t n = estimate.size();
  const double h = estimate.bandwidth();
  const double den = std::max(std::log(1.0 / h), std::log(std::log(static_cast<double>(n))));
  // Width follows the gamma^2-scaled deviation bound for the plug-in
  // estimate: zeta * sqrt(den / (n h gamma^4)).
  const double half =
    std::sqrt(den / (static_cast<double>(n) * h * std::pow(gamma, 4.0))) * zeta;

  CertaintyInterval out;
  out.center = center.value;
  out.half_width = half;
  out.zeta_hat = zeta;
  out.h = h;
  out.n = n;
  out.gamma = gamma;
  return out;
}

namespace {

struct RowKey {
  std::size_t n;
  std::uint64_t seed;
  int kind;
  double h;

  bool operator<(const RowKey& other) const
  {
    if (n != other.n) {
      return n < other.n;
    }
    if (seed != other.seed) {
      return seed < other.seed;
    }
    if (kind != other.kind) {
      return kind < other.kind;
    }
    return h < other.h;
  }
};

} // namespace

SweepReport sweep(const DistributionModel& model, const KernelSpec& kernel,
                  const BandwidthGrid& bandwidths, const ThresholdSchedule& schedule,
                  const std::vector<std::size_t>& n_list, const std::vector<std::uint64_t>& seeds,
                  const std::vector<EstimatorKind>& estimators, const SweepOptions& options)
{
  if (n_list.empty() || seeds.empty() || estimators.empty() || bandwidths.values.empty()) {
    throw std::invalid_argument("sweep: empty configuration");
  }

  SweepReport report;
  report.true_entropy = model.true_entropy();
  report.config.model = model.name();
  report.config.kernel = kernel.name();
  report.config.bandwidth_lower = bandwidths.lower;
  report.config.bandwidth_upper = bandwidths.upper;
  report.config.bandwidth_count = bandwidths.values.size();
  report.config.beta = schedule.beta;
  report.config.alpha = schedule.alpha;
  report.config.n_list = n_list;
  report.config.seeds = seeds;
  for (EstimatorKind kind : estimators) {
    report.config.estimators.push_back(to_string(kind));
  }
  report.config.grid_points = options.grid_points;
  report.config.with_centerings = options.with_centerings;
  report.config.with_intervals = options.with_intervals;

  std::map<std::pair<std::size_t, double>, CoverageCell> coverage;

  for (std::size_t n : n_list) {
    const double gamma = schedule.gamma_at(n);
    for (std::uint64_t seed : seeds) {
      const DataSet data = model.sample(n, seed);
      std::map<int, std::pair<double, bool>> sup_by_kind; // kind -> (sup, any)
      for (double h : bandwidths.values) {
        const DensityEstimate estimate(data, kernel, h);
        const EvaluationGrid grid =
          EvaluationGrid::for_estimate(data, kernel, h, options.grid_points);

        const bool need_grid_values =
          options.with_intervals ||
          std::find(estimators.begin(), estimators.end(), EstimatorKind::plugin_integral) !=
            estimators.end();
        std::vector<double> grid_values;
        if (need_grid_values) {
          grid_values = estimate.eval_grid(grid);
        }

        for (EstimatorKind kind : estimators) {
          SweepRow row;
          row.n = n;
          row.seed = seed;
          row.kind = kind;
          row.h = h;
          row.gamma = gamma;
          try {
            EntropyEstimate est;
            switch (kind) {
              case EstimatorKind::plugin_integral:
                est = entropy_plugin_from_values(grid_values, gamma, grid, estimate);
                break;
              case EstimatorKind::resubstitution:
                est = entropy_resubstitution(estimate, gamma);
                break;
              case EstimatorKind::leave_one_out:
                est = entropy_leave_one_out(data, kernel, h);
                break;
            }
            row.estimate = est.value;
            row.excluded_fraction = est.excluded_fraction;
            row.empty_region = est.empty_region;
            row.coarse_grid = est.coarse_grid;

            if (options.with_centerings) {
              double centering = 0.0;
              switch (kind) {
                case EstimatorKind::plugin_integral: {
                  const auto mask = threshold_mask(grid_values, gamma);
                  centering = centering_plugin(model, kernel, h, mask, grid);
                  break;
                }
                case EstimatorKind::resubstitution:
                  centering = centering_resub(model, kernel, h, estimate, gamma);
                  break;
                case EstimatorKind::leave_one_out:
                  centering = centering_leave_one_out(model, kernel, h, estimate);
                  break;
              }
              row.centering = centering;
              const double deviation = std::abs(est.value - centering);
              row.deviation = deviation;
              row.normalized_deviation =
                deviation_statistic(kind, n, h, gamma, deviation, options.denominator);
              auto& [sup, any] = sup_by_kind[static_cast<int>(kind)];
              sup = any ? std::max(sup, *row.normalized_deviation) : *row.normalized_deviation;
              any = true;
            }

            if (options.with_intervals && kind == EstimatorKind::plugin_integral) {
              const SupportBox proxy = estimate_support(data, &model.support());
              const CertaintyInterval interval =
                certainty_interval_from_values(grid_values, gamma, grid, proxy, estimate);
              row.interval_half_width = interval.half_width;
              row.interval_zeta = interval.zeta_hat;
              auto& cell = coverage[{ n, h }];
              cell.n = n;
              cell.h = h;
              cell.total += 1;
              if (interval.contains(model.true_entropy())) {
                cell.contained += 1;
              }
            }
          } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
          }
          report.rows.push_back(std::move(row));
        }
      }
      for (const auto& [kind, sup_any] : sup_by_kind) {
        if (sup_any.second) {
          report.sups.push_back(
            { n, seed, static_cast<EstimatorKind>(kind), sup_any.first });
        }
      }
    }
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return RowKey{ a.n, a.seed, static_cast<int>(a.kind), a.h } <
           RowKey{ b.n, b.seed, static_cast<int>(b.kind), b.h };
  });
  for (const auto& [key, cell] : coverage) {
    report.coverage.push_back(cell);
  }
  return report;
}

BiasProbeResult bias_probe(const DistributionModel& model, const KernelSpec& kernel,
                           const std::vector<double>& h_list, const EvaluationGrid& grid)
{
  if (h_list.empty()) {
    throw std::invalid_argument("bias_probe: need at least one bandwidth");
  }
  if (!model.compact_support()) {
    throw std::invalid_argument("bias_probe: model must have compact support");
  }
  if (kernel.order() > model.smoothness_order()) {
    throw std::invalid_argument("bias_probe: kernel order exceeds model smoothness");
  }

  const auto cuts = model.pdf_breakpoints();
  BiasProbeResult result;
  for (double h : h_list) {
    if (!(h > 0.0)) {
      throw std::invalid_argument("bias_probe: bandwidths must be positive");
    }
    std::vector<double> gaps(grid.total_points(), 0.0);
    parallel_for(grid.total_points(), [&](std::size_t begin, std::size_t end) {
      std::vector<double> point(grid.dimension());
      for (std::size_t i = begin; i < end; ++i) {
        grid.point_at(i, point);
        const double smoothed = smoothed_density_eval(model.pdf_fn(), kernel, h, point, cuts);
        gaps[i] = std::abs(smoothed - model.pdf(point));
      }
    });
    const double sup = *std::max_element(gaps.begin(), gaps.end());
    result.sup_bias.emplace_back(h, sup);
  }

  if (result.sup_bias.size() >= 3) {
    // least-squares slope of log(sup) against log(h)
    KahanSum sx;
    KahanSum sy;
    KahanSum sxx;
    KahanSum sxy;
    const double m = static_cast<double>(result.sup_bias.size());
    for (const auto& [h, sup] : result.sup_bias) {
      const double x = std::log(h);
      const double y = std::log(sup);
      sx.add(x);
      sy.add(y);
      sxx.add(x * x);
      sxy.add(x * y);
    }
    const double denom = m * sxx.value() - sx.value() * sx.value();
    if (denom != 0.0) {
      result.slope = (m * sxy.value() - sx.value() * sy.value()) / denom;
    }
  }
  return result;
}

} // namespace entrokit
