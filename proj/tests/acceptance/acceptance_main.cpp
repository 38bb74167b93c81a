// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "entrokit/csv.hpp"
#include "entrokit/errors.hpp"
#include "entrokit/estimators.hpp"
#include "entrokit/harness.hpp"
#include "entrokit/kernels.hpp"
#include "entrokit/models.hpp"
#include "entrokit/report_io.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace entrokit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  int id;
  std::string label;
  std::function<Outcome()> run;
};

std::string fmt(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double median_of(std::vector<double> xs)
{
  return oracles::median(std::move(xs));
}

// Reports produced along the way, rescanned by the robustness criterion.
std::vector<SweepReport> g_reports;

// ---------------------------------------------------------------- criterion 1

Outcome kernel_contract()
{
  struct Entry {
    KernelSpec kernel;
    std::string name;
  };
  std::vector<Entry> kernels;
  for (auto family : { KernelFamily::boxcar, KernelFamily::epanechnikov, KernelFamily::gaussian,
                       KernelFamily::double_exponential }) {
    kernels.push_back({ KernelSpec::make(family, 1), KernelSpec::make(family, 1).name() + " d=1" });
  }
  kernels.push_back({ KernelSpec::make_polynomial(4, 1), "poly:s=4 d=1" });
  kernels.push_back({ KernelSpec::make_polynomial(6, 1), "poly:s=6 d=1" });
  for (auto family : { KernelFamily::boxcar, KernelFamily::epanechnikov, KernelFamily::gaussian }) {
    kernels.push_back({ KernelSpec::make(family, 2), KernelSpec::make(family, 2).name() + " d=2" });
  }

  std::ostringstream detail;
  bool pass = true;
  for (const auto& entry : kernels) {
    const KernelSpec& kernel = entry.kernel;
    const auto moments = kernel_moments(kernel, kernel.order());
    double normalization = 0.0;
    double worst_low_moment = 0.0;
    double best_order_moment = 0.0;
    for (const auto& m : moments) {
      int degree = 0;
      for (int j : m.index) {
        degree += j;
      }
      if (degree == 0) {
        normalization = m.value;
      } else if (degree < kernel.order()) {
        worst_low_moment = std::max(worst_low_moment, std::abs(m.value));
      } else {
        best_order_moment = std::max(best_order_moment, std::abs(m.value));
      }
    }

    double sampled_sup = 0.0;
    if (kernel.dimension() == 1) {
      const double r = kernel.eval_radius();
      for (int i = 0; i <= 10000; ++i) {
        const double t = -r + 2.0 * r * i / 10000.0;
        sampled_sup = std::max(sampled_sup, std::abs(kernel.eval1d(t)));
      }
    } else {
      const double r = kernel.eval_radius();
      for (int i = 0; i <= 200; ++i) {
        for (int j = 0; j <= 200; ++j) {
          const std::vector<double> t = { -r + 2.0 * r * i / 200.0, -r + 2.0 * r * j / 200.0 };
          sampled_sup = std::max(sampled_sup, std::abs(kernel.eval(t)));
        }
      }
    }

    const bool ok = std::abs(normalization - 1.0) <= 1e-6 && worst_low_moment <= 1e-6 &&
                    best_order_moment > 1e-3 && sampled_sup <= kernel.sup_norm() + 1e-6;
    if (!ok) {
      pass = false;
      detail << entry.name << " failed (norm " << fmt(normalization) << ", low "
             << fmt(worst_low_moment) << ", order " << fmt(best_order_moment) << ", sup "
             << fmt(sampled_sup) << " vs " << fmt(kernel.sup_norm()) << "); ";
    }
  }
  if (pass) {
    detail << kernels.size() << " kernels pass normalization/sup-norm/moment checks at 1e-6";
  }
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 2

Outcome oracle_equivalence()
{
  const auto model = DistributionModel::normal();
  const DataSet data = model.sample(50, 1);
  const std::vector<double> xs(data.values().begin(), data.values().end());
  const auto gaussian = KernelSpec::make(KernelFamily::gaussian);
  const double h = 0.4;
  const double gamma = 0.01;

  const DensityEstimate estimate(data, gaussian, h);
  const EvaluationGrid grid = EvaluationGrid::for_estimate(data, gaussian, h, 20001);
  const double plugin = entropy_plugin(estimate, gamma, grid).value;
  const double plugin_oracle =
    oracles::plugin_entropy("gaussian", xs, h, gamma, grid.lower()[0], grid.upper()[0]);
  const double plugin_gap = std::abs(plugin - plugin_oracle);

  const double resub = entropy_resubstitution(estimate, gamma).value;
  const double resub_gap = std::abs(resub - oracles::resubstitution("gaussian", xs, h, gamma));

  const double loo = entropy_leave_one_out(data, gaussian, h).value;
  const double loo_gap = std::abs(loo - oracles::leave_one_out("gaussian", xs, h));

  const bool pass = plugin_gap <= 1e-4 && resub_gap <= 1e-12 && loo_gap <= 1e-12;
  std::ostringstream detail;
  detail << "plug-in gap " << fmt(plugin_gap) << " (<=1e-4), resubstitution gap "
         << fmt(resub_gap) << ", leave-one-out gap " << fmt(loo_gap) << " (<=1e-12)";
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 3

Outcome closed_form_consistency()
{
  const auto start = std::chrono::steady_clock::now();
  const ThresholdSchedule schedule{ 0.25, 1.0 };
  const std::size_t n = 20000;
  const double gamma = schedule.gamma_at(n);

  std::vector<double> normal_h1;
  std::vector<double> normal_h2;
  std::vector<double> uniform_h1;
  std::vector<double> uniform_h2;
  const auto normal = DistributionModel::normal();
  const auto uniform = DistributionModel::uniform();
  const auto gaussian = KernelSpec::make(KernelFamily::gaussian);
  const auto boxcar = KernelSpec::make(KernelFamily::boxcar);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    {
      const DataSet data = normal.sample(n, seed);
      const DensityEstimate est(data, gaussian, 0.3);
      const EvaluationGrid grid = EvaluationGrid::for_estimate(data, gaussian, 0.3, 1001);
      normal_h1.push_back(entropy_plugin(est, gamma, grid).value);
      normal_h2.push_back(entropy_resubstitution(est, gamma).value);
    }
    {
      const DataSet data = uniform.sample(n, seed);
      const DensityEstimate est(data, boxcar, 0.2);
      const EvaluationGrid grid = EvaluationGrid::for_estimate(data, boxcar, 0.2, 2001);
      uniform_h1.push_back(entropy_plugin(est, gamma, grid).value);
      uniform_h2.push_back(entropy_resubstitution(est, gamma).value);
    }
  }

  const double truth = normal.true_entropy();
  auto abs_gap = [](std::vector<double> values, double target) {
    for (auto& v : values) {
      v = std::abs(v - target);
    }
    return median_of(std::move(values));
  };
  const double n_h1 = abs_gap(normal_h1, truth);
  const double n_h2 = abs_gap(normal_h2, truth);
  const double u_h1 = abs_gap(uniform_h1, 0.0);
  const double u_h2 = abs_gap(uniform_h2, 0.0);

  const double elapsed =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = n_h1 <= 0.05 && n_h2 <= 0.05 && u_h1 <= 0.05 && u_h2 <= 0.05 &&
                    elapsed < 120.0;
  std::ostringstream detail;
  detail << "median |err| vs 0.05: normal H1 " << fmt(n_h1) << ", H2 " << fmt(n_h2)
         << "; uniform H1 " << fmt(u_h1) << ", H2 " << fmt(u_h2) << "; " << fmt(elapsed) << " s";
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 4

Outcome consistency_ladder()
{
  const std::vector<std::size_t> ladder = { 1000, 4000, 16000 };
  const std::vector<std::uint64_t> seeds = [] {
    std::vector<std::uint64_t> s;
    for (std::uint64_t i = 1; i <= 15; ++i) {
      s.push_back(i);
    }
    return s;
  }();
  const ThresholdSchedule schedule{ 0.25, 1.0 };
  const std::vector<EstimatorKind> kinds = { EstimatorKind::plugin_integral,
                                             EstimatorKind::resubstitution };

  struct ModelCase {
    DistributionModel model;
    KernelSpec kernel;
    std::string tag;
  };
  const std::vector<ModelCase> cases = {
    { DistributionModel::normal(), KernelSpec::make(KernelFamily::gaussian), "normal/gaussian" },
    { DistributionModel::uniform(), KernelSpec::make(KernelFamily::boxcar), "uniform/boxcar" },
  };

  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    // medians[kind] indexed by ladder position
    std::map<int, std::vector<double>> medians;
    for (std::size_t n : ladder) {
      const BandwidthGrid bw = bandwidth_grid(n, 0.5, 2.0, 0.2, 5);
      SweepOptions options;
      options.with_centerings = false;
      options.with_intervals = false;
      const SweepReport report =
        sweep(c.model, c.kernel, bw, schedule, { n }, seeds, kinds, options);
      g_reports.push_back(report);

      for (EstimatorKind kind : kinds) {
        std::map<std::uint64_t, double> sup_by_seed;
        for (const auto& row : report.rows) {
          if (row.kind != kind || row.failed) {
            continue;
          }
          const double err = std::abs(row.estimate - c.model.true_entropy());
          auto [it, inserted] = sup_by_seed.try_emplace(row.seed, err);
          if (!inserted) {
            it->second = std::max(it->second, err);
          }
        }
        std::vector<double> sups;
        for (const auto& [seed, sup] : sup_by_seed) {
          sups.push_back(sup);
        }
        medians[static_cast<int>(kind)].push_back(median_of(std::move(sups)));
      }
    }
    for (EstimatorKind kind : kinds) {
      const auto& ms = medians[static_cast<int>(kind)];
      bool decreasing = true;
      for (std::size_t i = 1; i < ms.size(); ++i) {
        decreasing = decreasing && ms[i] < ms[i - 1];
      }
      pass = pass && decreasing;
      detail << c.tag << ' ' << to_string(kind) << " [";
      for (std::size_t i = 0; i < ms.size(); ++i) {
        detail << (i > 0 ? " " : "") << fmt(ms[i]);
      }
      detail << (decreasing ? "] down; " : "] NOT strictly decreasing; ");
    }
  }
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 5

Outcome uniform_in_bandwidth_boundedness()
{
  const std::vector<std::size_t> ladder = { 1000, 2000, 4000, 8000, 16000 };
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 1; i <= 20; ++i) {
    seeds.push_back(i);
  }
  const ThresholdSchedule schedule{ 0.25, 0.0 }; // bounded away from zero: alpha = 0
  const auto uniform = DistributionModel::uniform();
  const auto boxcar = KernelSpec::make(KernelFamily::boxcar);
  const std::vector<EstimatorKind> kinds = { EstimatorKind::plugin_integral,
                                             EstimatorKind::resubstitution };

  std::map<int, std::vector<double>> medians; // kind -> ladder medians
  for (std::size_t n : ladder) {
    const BandwidthGrid bw = bandwidth_grid(n, 0.5, 2.0, 0.2, 8);
    SweepOptions options;
    options.with_intervals = false;
    const SweepReport report = sweep(uniform, boxcar, bw, schedule, { n }, seeds, kinds, options);
    g_reports.push_back(report);
    for (EstimatorKind kind : kinds) {
      std::vector<double> sups;
      for (const auto& sup : report.sups) {
        if (sup.kind == kind) {
          sups.push_back(sup.sup_normalized_deviation);
        }
      }
      medians[static_cast<int>(kind)].push_back(median_of(std::move(sups)));
    }
  }

  bool pass = true;
  std::ostringstream detail;
  for (EstimatorKind kind : kinds) {
    const auto& ms = medians[static_cast<int>(kind)];
    bool bounded = true;
    for (double m : ms) {
      bounded = bounded && m <= 1.5 * ms.front();
    }
    pass = pass && bounded;
    detail << to_string(kind) << " medians [";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      detail << (i > 0 ? " " : "") << fmt(ms[i]);
    }
    detail << (bounded ? "] within 1.5x first; " : "] GREW beyond 1.5x first; ");
  }
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 6

Outcome bias_rate()
{
  const auto cosine = DistributionModel::raised_cosine();
  const std::vector<double> h_list = { 0.2, 0.1, 0.05 };
  // window kept clear of the support faces: every x +/- h stays interior
  const EvaluationGrid window = EvaluationGrid::uniform1d(0.25, 0.75, 201);

  const BiasProbeResult order2 =
    bias_probe(cosine, KernelSpec::make(KernelFamily::epanechnikov), h_list, window);
  const BiasProbeResult order4 =
    bias_probe(cosine, KernelSpec::make_polynomial(4), h_list, window);

  const double s2 = order2.slope.value_or(0.0);
  const double s4 = order4.slope.value_or(0.0);
  const bool pass = std::abs(s2 - 2.0) <= 0.3 && std::abs(s4 - 4.0) <= 0.5;
  std::ostringstream detail;
  detail << "log-log slopes: order 2 kernel " << fmt(s2) << " (2 +/- 0.3), order 4 kernel "
         << fmt(s4) << " (4 +/- 0.5)";
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 7

Outcome interval_coverage()
{
  const auto normal = DistributionModel::normal();
  const auto gaussian = KernelSpec::make(KernelFamily::gaussian);
  const ThresholdSchedule schedule{ 0.25, 1.0 };
  const double h = 0.3;
  const double truth = normal.true_entropy();

  auto coverage_at = [&](std::size_t n) {
    const double gamma = schedule.gamma_at(n);
    std::size_t contained = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const DataSet data = normal.sample(n, seed);
      const DensityEstimate est(data, gaussian, h);
      const EvaluationGrid grid = EvaluationGrid::for_estimate(data, gaussian, h, 401);
      const SupportBox proxy = estimate_support(data, &normal.support());
      const CertaintyInterval interval = certainty_interval(est, gamma, grid, proxy);
      if (interval.contains(truth)) {
        ++contained;
      }
    }
    return static_cast<double>(contained) / 200.0;
  };

  const double at_5000 = coverage_at(5000);
  const double at_20000 = coverage_at(20000);
  const bool pass = at_5000 >= 0.95 && at_20000 >= at_5000;
  std::ostringstream detail;
  detail << "coverage over 200 replicates: n=5000 " << fmt(at_5000) << " (>=0.95), n=20000 "
         << fmt(at_20000) << " (>= n=5000)";
  return { pass, detail.str() };
}

// ---------------------------------------------------------------- criterion 8

Outcome robustness()
{
  bool pass = true;
  std::ostringstream detail;

  // every row of every report produced above is finite or flagged
  std::size_t scanned = 0;
  for (const auto& report : g_reports) {
    for (const auto& row : report.rows) {
      ++scanned;
      if (row.failed) {
        continue;
      }
      bool finite = std::isfinite(row.estimate) && std::isfinite(row.excluded_fraction);
      if (row.centering) {
        finite = finite && std::isfinite(*row.centering);
      }
      if (row.normalized_deviation) {
        finite = finite && std::isfinite(*row.normalized_deviation);
      }
      if (!finite) {
        pass = false;
        detail << "non-finite value at n=" << row.n << " seed=" << row.seed << "; ";
      }
    }
  }

  // a small cross-model matrix, all estimators, with failures expected and
  // contained
  const std::vector<DistributionModel> models = {
    DistributionModel::uniform(),        DistributionModel::normal(),
    DistributionModel::raised_cosine(),  DistributionModel::exponential(2.0),
    DistributionModel::gaussian_mixture(0.5, 3.0),
  };
  const std::vector<KernelSpec> kernels = {
    KernelSpec::make(KernelFamily::boxcar),
    KernelSpec::make(KernelFamily::epanechnikov),
    KernelSpec::make(KernelFamily::gaussian),
    KernelSpec::make(KernelFamily::double_exponential),
    KernelSpec::make_polynomial(4),
  };
  const ThresholdSchedule schedule{ 0.25, 1.0 };
  const std::vector<EstimatorKind> kinds = { EstimatorKind::plugin_integral,
                                             EstimatorKind::resubstitution,
                                             EstimatorKind::leave_one_out };
  for (const auto& model : models) {
    for (const auto& kernel : kernels) {
      BandwidthGrid bw;
      bw.lower = 0.05;
      bw.upper = 0.4;
      bw.values = { 0.05, 0.15, 0.4 };
      SweepOptions options;
      options.grid_points = 301;
      options.with_centerings = true;
      options.with_intervals = true;
      try {
        const SweepReport report =
          sweep(model, kernel, bw, schedule, { 200 }, { 1, 2 }, kinds, options);
        for (const auto& row : report.rows) {
          ++scanned;
          if (!row.failed && !std::isfinite(row.estimate)) {
            pass = false;
            detail << "non-finite estimate for " << model.name() << "/" << kernel.name() << "; ";
          }
        }
      } catch (const std::exception& e) {
        pass = false;
        detail << "sweep aborted for " << model.name() << "/" << kernel.name() << ": " << e.what()
               << "; ";
      }
    }
  }

  // empty kept region is flagged, never thrown
  {
    const auto uniform = DistributionModel::uniform();
    const DataSet data = uniform.sample(100, 3);
    const auto boxcar = KernelSpec::make(KernelFamily::boxcar);
    const DensityEstimate est(data, boxcar, 0.2);
    const EvaluationGrid grid = EvaluationGrid::for_estimate(data, boxcar, 0.2, 501);
    const EntropyEstimate plugin = entropy_plugin(est, 50.0, grid);
    const EntropyEstimate resub = entropy_resubstitution(est, 50.0);
    if (!(plugin.empty_region && plugin.value == 0.0 && resub.empty_region)) {
      pass = false;
      detail << "empty kept region not flagged; ";
    }
  }

  // isolated points raise a typed error carrying the indices
  {
    const auto boxcar = KernelSpec::make(KernelFamily::boxcar);
    bool threw = false;
    try {
      (void)entropy_leave_one_out(DataSet({ 0.0, 10.0 }, 1), boxcar, 0.5);
    } catch (const IsolatedPointError& e) {
      threw = e.indices().size() == 2;
    }
    if (!threw) {
      pass = false;
      detail << "isolated points not reported; ";
    }
  }

  if (pass) {
    detail << scanned << " report rows finite or flagged; degenerate cases contained";
  }
  return { pass, detail.str() };
}

} // namespace

int main()
{
  const std::vector<Check> checks = {
    { 1, "kernel contract (normalization/sup-norm/moments at 1e-6)", kernel_contract },
    { 2, "oracle equivalence (plug-in 1e-4, point estimators 1e-12)", oracle_equivalence },
    { 3, "closed-form consistency at n=20000 (medians <= 0.05)", closed_form_consistency },
    { 4, "consistency ladder (sup-over-h errors strictly decrease)", consistency_ladder },
    { 5, "uniform-in-bandwidth boundedness (growth <= 50%)", uniform_in_bandwidth_boundedness },
    { 6, "bias rate (log-log slope matches kernel order)", bias_rate },
    { 7, "certainty-interval coverage (>= 95%, nondecreasing)", interval_coverage },
    { 8, "robustness (no NaN/inf; degenerate cases flagged)", robustness },
  };

  int failures = 0;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check.run();
    } catch (const std::exception& e) {
      outcome = { false, std::string("exception: ") + e.what() };
    }
    const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << check.id << ": "
              << check.label << " — " << outcome.detail << " (" << fmt(elapsed) << " s)"
              << std::endl;
    if (!outcome.pass) {
      ++failures;
    }
  }
  std::cout << "acceptance: " << (checks.size() - static_cast<std::size_t>(failures)) << "/"
            << checks.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
