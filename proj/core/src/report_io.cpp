#include "entrokit/report_io.hpp"

#include "entrokit/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <vector>

namespace entrokit {

namespace {

double median(std::vector<double> xs)
{
  if (xs.empty()) {
    return 0.0;
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

std::string flags_of(const SweepRow& row)
{
  std::string flags;
  if (row.empty_region) {
    flags += "empty_region";
  }
  if (row.coarse_grid) {
    flags += flags.empty() ? "coarse_grid" : ";coarse_grid";
  }
  if (row.failed) {
    flags += flags.empty() ? "failed" : ";failed";
  }
  return flags;
}

nlohmann::json config_json(const SweepConfig& config)
{
  nlohmann::json j;
  j["model"] = config.model;
  j["kernel"] = config.kernel;
  j["bandwidth_lower"] = config.bandwidth_lower;
  j["bandwidth_upper"] = config.bandwidth_upper;
  j["bandwidth_count"] = config.bandwidth_count;
  j["beta"] = config.beta;
  j["alpha"] = config.alpha;
  j["n_list"] = config.n_list;
  j["seeds"] = config.seeds;
  j["estimators"] = config.estimators;
  j["grid_points"] = config.grid_points;
  j["with_centerings"] = config.with_centerings;
  j["with_intervals"] = config.with_intervals;
  return j;
}

} // namespace

void write_sweep_csv(const SweepReport& report, std::ostream& out)
{
  out << "# model=" << report.config.model << '\n';
  out << "# kernel=" << report.config.kernel << '\n';
  out << "# bandwidths=" << format_double(report.config.bandwidth_lower) << ".."
      << format_double(report.config.bandwidth_upper) << " count="
      << report.config.bandwidth_count << '\n';
  out << "# beta=" << format_double(report.config.beta)
      << " alpha=" << format_double(report.config.alpha) << '\n';
  out << "# n_list=";
  for (std::size_t i = 0; i < report.config.n_list.size(); ++i) {
    out << (i > 0 ? "," : "") << report.config.n_list[i];
  }
  out << " seeds=";
  for (std::size_t i = 0; i < report.config.seeds.size(); ++i) {
    out << (i > 0 ? "," : "") << report.config.seeds[i];
  }
  out << '\n';
  out << "# estimators=";
  for (std::size_t i = 0; i < report.config.estimators.size(); ++i) {
    out << (i > 0 ? "," : "") << report.config.estimators[i];
  }
  out << " grid_points=" << report.config.grid_points << " centerings="
      << (report.config.with_centerings ? 1 : 0) << " intervals="
      << (report.config.with_intervals ? 1 : 0) << '\n';
  out << "n,seed,estimator,h,gamma,estimate,centering,deviation,normalized_deviation,"
         "excluded_fraction,flags,error\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << row.seed << ',' << to_string(row.kind) << ',' << format_double(row.h)
        << ',' << format_double(row.gamma) << ',' << format_double(row.estimate) << ',';
    if (row.centering) {
      out << format_double(*row.centering);
    }
    out << ',';
    if (row.deviation) {
      out << format_double(*row.deviation);
    }
    out << ',';
    if (row.normalized_deviation) {
      out << format_double(*row.normalized_deviation);
    }
    out << ',' << format_double(row.excluded_fraction) << ',' << flags_of(row) << ','
        << row.error << '\n';
  }
}

std::string sweep_summary_json(const SweepReport& report)
{
  nlohmann::json j;
  j["config"] = config_json(report.config);
  if (report.true_entropy) {
    j["true_entropy"] = *report.true_entropy;
  }

  // medians of estimates and absolute errors per (n, estimator)
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> estimates;
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> abs_errors;
  for (const auto& row : report.rows) {
    if (row.failed) {
      continue;
    }
    const auto key = std::make_pair(row.n, to_string(row.kind));
    estimates[key].push_back(row.estimate);
    if (report.true_entropy) {
      abs_errors[key].push_back(std::abs(row.estimate - *report.true_entropy));
    }
  }
  nlohmann::json medians = nlohmann::json::array();
  for (const auto& [key, values] : estimates) {
    nlohmann::json entry;
    entry["n"] = key.first;
    entry["estimator"] = key.second;
    entry["median_estimate"] = median(values);
    const auto err = abs_errors.find(key);
    if (err != abs_errors.end()) {
      entry["median_abs_error"] = median(err->second);
    }
    medians.push_back(entry);
  }
  j["medians"] = medians;

  // medians over seeds of the per-replicate sup over h
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> sups;
  for (const auto& sup : report.sups) {
    sups[{ sup.n, to_string(sup.kind) }].push_back(sup.sup_normalized_deviation);
  }
  nlohmann::json sup_json = nlohmann::json::array();
  for (const auto& [key, values] : sups) {
    nlohmann::json entry;
    entry["n"] = key.first;
    entry["estimator"] = key.second;
    entry["median_sup_normalized_deviation"] = median(values);
    entry["replicates"] = values.size();
    sup_json.push_back(entry);
  }
  j["sups"] = sup_json;

  nlohmann::json coverage = nlohmann::json::array();
  for (const auto& cell : report.coverage) {
    nlohmann::json entry;
    entry["n"] = cell.n;
    entry["h"] = cell.h;
    entry["contained"] = cell.contained;
    entry["replicates"] = cell.total;
    entry["coverage"] = cell.rate();
    coverage.push_back(entry);
  }
  j["interval_coverage"] = coverage;

  return j.dump(2);
}

} // namespace entrokit
