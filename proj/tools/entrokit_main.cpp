// entrokit command line: entropy estimation from files or ground-truth
// models, bandwidth sweep experiments and bias probes.

#include <CLI11.hpp>
#include <json.hpp>

#include "entrokit/csv.hpp"
#include "entrokit/errors.hpp"
#include "entrokit/estimators.hpp"
#include "entrokit/harness.hpp"
#include "entrokit/models.hpp"
#include "entrokit/report_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace entrokit;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

constexpr double kLog2 = 0.6931471805599453094;

struct CommonConfig {
  std::string kernel = "epanechnikov";
  double beta = 0.25;
  double alpha = 1.0;
  std::size_t grid_points = 0;
  std::string output;
  std::string format = "json";
  bool bits = false;
};

double presented(double nats, bool bits)
{
  return bits ? nats / kLog2 : nats;
}

// "1..20" or "1,4,9"
std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
  std::vector<std::uint64_t> out;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t first = std::stoull(text.substr(0, range));
    const std::uint64_t last = std::stoull(text.substr(range + 2));
    if (last < first) {
      throw std::invalid_argument("seed range is reversed");
    }
    for (std::uint64_t s = first; s <= last; ++s) {
      out.push_back(s);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stoull(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty seed list");
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text)
{
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stoull(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty n list");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty list");
  }
  return out;
}

void write_output(const std::string& path, const std::string& payload)
{
  if (path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') {
      std::cout << '\n';
    }
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write '" + path + "'", 0);
  }
  out << payload;
}

// flat key,value rendering of a one-level-nested json object
std::string json_to_kv_csv(const nlohmann::json& j)
{
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [inner, v] : value.items()) {
        out << key << '.' << inner << ',' << v.dump() << '\n';
      }
    } else {
      out << key << ',' << value.dump() << '\n';
    }
  }
  return out.str();
}

nlohmann::json estimate_block(const EntropyEstimate& est, bool bits)
{
  nlohmann::json j;
  j["value"] = presented(est.value, bits);
  j["excluded_fraction"] = est.excluded_fraction;
  nlohmann::json flags = nlohmann::json::array();
  if (est.empty_region) {
    flags.push_back("empty_region");
  }
  if (est.coarse_grid) {
    flags.push_back("coarse_grid");
  }
  j["flags"] = flags;
  return j;
}

nlohmann::json config_block(const CommonConfig& common, std::size_t n, std::size_t dimension,
                            double h, double gamma)
{
  nlohmann::json j;
  j["kernel"] = common.kernel;
  j["h"] = h;
  j["beta"] = common.beta;
  j["alpha"] = common.alpha;
  j["gamma"] = gamma;
  j["grid_points"] = common.grid_points;
  j["n"] = n;
  j["dimension"] = dimension;
  j["units"] = common.bits ? "bits" : "nats";
  return j;
}

int run_point_estimate(const CommonConfig& common, const DataSet& data, double h,
                       const DistributionModel* model, bool with_loo)
{
  const KernelSpec kernel =
    KernelSpec::parse(common.kernel, static_cast<int>(data.dimension()));
  const ThresholdSchedule schedule{ common.beta, common.alpha };
  const double gamma = schedule.gamma_at(data.size());

  const DensityEstimate estimate(data, kernel, h);
  const EvaluationGrid grid =
    EvaluationGrid::for_estimate(data, kernel, h, common.grid_points);
  const std::vector<double> values = estimate.eval_grid(grid);

  const EntropyEstimate plugin = entropy_plugin_from_values(values, gamma, grid, estimate);
  const EntropyEstimate resub = entropy_resubstitution(estimate, gamma);

  const SupportBox proxy =
    estimate_support(data, model != nullptr ? &model->support() : nullptr);
  const CertaintyInterval interval =
    certainty_interval_from_values(values, gamma, grid, proxy, estimate);

  nlohmann::json j;
  j["config"] = config_block(common, data.size(), data.dimension(), h, gamma);
  if (model != nullptr) {
    j["config"]["model"] = model->name();
  }
  j["plugin_integral"] = estimate_block(plugin, common.bits);
  j["resubstitution"] = estimate_block(resub, common.bits);
  nlohmann::json ji;
  ji["center"] = presented(interval.center, common.bits);
  ji["half_width"] = presented(interval.half_width, common.bits);
  ji["lower"] = presented(interval.lower(), common.bits);
  ji["upper"] = presented(interval.upper(), common.bits);
  ji["zeta"] = interval.zeta_hat;
  j["certainty_interval"] = ji;

  if (with_loo) {
    try {
      const EntropyEstimate loo = entropy_leave_one_out(data, kernel, h);
      j["leave_one_out"] = estimate_block(loo, common.bits);
    } catch (const IsolatedPointError& e) {
      j["leave_one_out"] = { { "error", e.what() } };
    }
  }

  if (model != nullptr) {
    j["true_entropy"] = presented(model->true_entropy(), common.bits);
    const auto mask = threshold_mask(values, gamma);
    const double center_plugin = centering_plugin(*model, kernel, h, mask, grid);
    const double center_resub = centering_resub(*model, kernel, h, estimate, gamma);
    const double dev_plugin = std::abs(plugin.value - center_plugin);
    const double dev_resub = std::abs(resub.value - center_resub);
    j["plugin_integral"]["centering"] = presented(center_plugin, common.bits);
    j["plugin_integral"]["deviation"] = presented(dev_plugin, common.bits);
    j["plugin_integral"]["abs_error"] =
      presented(std::abs(plugin.value - model->true_entropy()), common.bits);
    j["resubstitution"]["centering"] = presented(center_resub, common.bits);
    j["resubstitution"]["deviation"] = presented(dev_resub, common.bits);
    j["resubstitution"]["abs_error"] =
      presented(std::abs(resub.value - model->true_entropy()), common.bits);
    if (data.size() > 16) {
      j["plugin_integral"]["normalized_deviation"] =
        deviation_statistic(EstimatorKind::plugin_integral, data.size(), h, gamma, dev_plugin);
      j["resubstitution"]["normalized_deviation"] =
        deviation_statistic(EstimatorKind::resubstitution, data.size(), h, gamma, dev_resub);
    }
  }

  write_output(common.output, common.format == "csv" ? json_to_kv_csv(j) : j.dump(2));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "entrokit: kernel-type differential entropy estimation" };
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help"); // keep --h free for the bandwidth

  CommonConfig common;

  // --- estimate ---
  auto* estimate_cmd = app.add_subcommand("estimate", "estimate entropy from a CSV sample");
  estimate_cmd->set_help_flag("--help", "print help");
  std::string input_path;
  double h_single = 0.2;
  bool with_loo = false;
  estimate_cmd->add_option("--input", input_path, "CSV file, one row per observation")
    ->required();
  estimate_cmd->add_option("--h", h_single, "bandwidth in (0, 1]")->required();
  estimate_cmd->add_option("--kernel", common.kernel, "kernel name");
  estimate_cmd->add_option("--beta", common.beta, "threshold scale");
  estimate_cmd->add_option("--alpha", common.alpha, "threshold exponent");
  estimate_cmd->add_option("--grid-points", common.grid_points, "grid nodes per axis");
  estimate_cmd->add_option("--output", common.output, "output path (default stdout)");
  estimate_cmd->add_option("--format", common.format, "json|csv")
    ->check(CLI::IsMember({ "json", "csv" }));
  estimate_cmd->add_flag("--bits", common.bits, "report in bits instead of nats");
  estimate_cmd->add_flag("--loo", with_loo, "also compute the leave-one-out estimate");

  // --- validate ---
  auto* validate_cmd =
    app.add_subcommand("validate", "estimate against a ground-truth model");
  validate_cmd->set_help_flag("--help", "print help");
  std::string model_text;
  std::size_t validate_n = 1000;
  std::uint64_t validate_seed = 1;
  validate_cmd->add_option("--model", model_text, "model, e.g. normal:sigma=1")->required();
  validate_cmd->add_option("--n", validate_n, "sample size")->required();
  validate_cmd->add_option("--seed", validate_seed, "sampler seed");
  validate_cmd->add_option("--h", h_single, "bandwidth in (0, 1]")->required();
  validate_cmd->add_option("--kernel", common.kernel, "kernel name");
  validate_cmd->add_option("--beta", common.beta, "threshold scale");
  validate_cmd->add_option("--alpha", common.alpha, "threshold exponent");
  validate_cmd->add_option("--grid-points", common.grid_points, "grid nodes per axis");
  validate_cmd->add_option("--output", common.output, "output path (default stdout)");
  validate_cmd->add_option("--format", common.format, "json|csv")
    ->check(CLI::IsMember({ "json", "csv" }));
  validate_cmd->add_flag("--bits", common.bits, "report in bits instead of nats");
  validate_cmd->add_flag("--loo", with_loo, "also compute the leave-one-out estimate");

  // --- sweep ---
  auto* sweep_cmd = app.add_subcommand("sweep", "bandwidth sweep experiment");
  sweep_cmd->set_help_flag("--help", "print help");
  double A = 0.5;
  double B = 2.0;
  double delta = 0.2;
  std::size_t count = 16;
  std::string n_text = "1000";
  std::string seeds_text = "1..8";
  std::string estimators_text = "plugin,resub";
  std::string summary_path;
  bool no_centering = false;
  bool no_intervals = false;
  bool two_log_denominator = false;
  sweep_cmd->add_option("--model", model_text, "model, e.g. uniform")->required();
  sweep_cmd->add_option("--kernel", common.kernel, "kernel name");
  sweep_cmd->add_option("--A", A, "lower bandwidth scale");
  sweep_cmd->add_option("--B", B, "upper bandwidth scale");
  sweep_cmd->add_option("--delta", delta, "bandwidth exponent, in [1/(d+4), 1)");
  sweep_cmd->add_option("--count", count, "bandwidth grid size");
  sweep_cmd->add_option("--n", n_text, "comma list of sample sizes");
  sweep_cmd->add_option("--seeds", seeds_text, "seed list: 1..20 or 1,2,5");
  sweep_cmd->add_option("--estimators", estimators_text, "comma list: plugin,resub,loo");
  sweep_cmd->add_option("--beta", common.beta, "threshold scale");
  sweep_cmd->add_option("--alpha", common.alpha, "threshold exponent");
  sweep_cmd->add_option("--grid-points", common.grid_points, "grid nodes per axis");
  sweep_cmd->add_option("--output", common.output, "CSV report path (default stdout)");
  sweep_cmd->add_option("--summary", summary_path, "JSON summary path");
  sweep_cmd->add_flag("--no-centering", no_centering, "skip model centerings");
  sweep_cmd->add_flag("--no-intervals", no_intervals, "skip certainty intervals");
  sweep_cmd->add_flag("--two-log-denominator", two_log_denominator,
                      "use the 2 log(1/h) normalization");

  // --- bias ---
  auto* bias_cmd = app.add_subcommand("bias", "smoothing bias ladder");
  bias_cmd->set_help_flag("--help", "print help");
  std::string h_list_text = "0.2,0.1,0.05";
  double bias_lo = 0.25;
  double bias_hi = 0.75;
  std::size_t bias_points = 201;
  bias_cmd->add_option("--model", model_text, "compact-support model")->required();
  bias_cmd->add_option("--kernel", common.kernel, "kernel name");
  bias_cmd->add_option("--h", h_list_text, "comma list of bandwidths");
  bias_cmd->add_option("--lower", bias_lo, "probe window lower edge");
  bias_cmd->add_option("--upper", bias_hi, "probe window upper edge");
  bias_cmd->add_option("--points", bias_points, "probe grid nodes");
  bias_cmd->add_option("--output", common.output, "output path (default stdout)");
  bias_cmd->add_option("--format", common.format, "json|csv")
    ->check(CLI::IsMember({ "json", "csv" }));

  CLI11_PARSE(app, argc, argv);

  try {
    if (estimate_cmd->parsed()) {
      const DataSet data = ingest_csv(input_path);
      return run_point_estimate(common, data, h_single, nullptr, with_loo);
    }

    if (validate_cmd->parsed()) {
      const DistributionModel model = DistributionModel::parse(model_text);
      const DataSet data = model.sample(validate_n, validate_seed);
      return run_point_estimate(common, data, h_single, &model, with_loo);
    }

    if (sweep_cmd->parsed()) {
      const DistributionModel model = DistributionModel::parse(model_text);
      const KernelSpec kernel =
        KernelSpec::parse(common.kernel, static_cast<int>(model.dimension()));
      const ThresholdSchedule schedule{ common.beta, common.alpha };
      const std::vector<std::size_t> n_list = parse_size_list(n_text);
      const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);
      std::vector<EstimatorKind> kinds;
      {
        std::stringstream ss(estimators_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          kinds.push_back(estimator_kind_from_string(item));
        }
      }
      std::size_t n_min = n_list.front();
      for (std::size_t n : n_list) {
        n_min = std::min(n_min, n);
      }
      const BandwidthGrid bandwidths =
        bandwidth_grid(n_min, A, B, delta, count, model.dimension());

      SweepOptions options;
      options.grid_points = common.grid_points;
      options.with_centerings = !no_centering;
      options.with_intervals = !no_intervals;
      options.denominator = two_log_denominator ? DeviationDenominator::two_log_inv_h
                                                 : DeviationDenominator::log_inv_h_or_loglog_n;
      const SweepReport report =
        sweep(model, kernel, bandwidths, schedule, n_list, seeds, kinds, options);

      std::ostringstream csv;
      write_sweep_csv(report, csv);
      write_output(common.output, csv.str());
      if (!summary_path.empty()) {
        write_output(summary_path, sweep_summary_json(report));
      }
      return kExitOk;
    }

    if (bias_cmd->parsed()) {
      const DistributionModel model = DistributionModel::parse(model_text);
      const KernelSpec kernel =
        KernelSpec::parse(common.kernel, static_cast<int>(model.dimension()));
      const std::vector<double> h_list = parse_double_list(h_list_text);
      const EvaluationGrid grid = EvaluationGrid::uniform1d(bias_lo, bias_hi, bias_points);
      const BiasProbeResult probe = bias_probe(model, kernel, h_list, grid);

      if (common.format == "csv") {
        std::ostringstream out;
        out << "# model=" << model.name() << " kernel=" << kernel.name() << '\n';
        out << "h,sup_bias\n";
        for (const auto& [h, sup] : probe.sup_bias) {
          out << format_double(h) << ',' << format_double(sup) << '\n';
        }
        if (probe.slope) {
          out << "# slope=" << format_double(*probe.slope) << '\n';
        }
        write_output(common.output, out.str());
      } else {
        nlohmann::json j;
        j["config"] = { { "model", model.name() },
                        { "kernel", kernel.name() },
                        { "lower", bias_lo },
                        { "upper", bias_hi },
                        { "points", bias_points } };
        nlohmann::json ladder = nlohmann::json::array();
        for (const auto& [h, sup] : probe.sup_bias) {
          ladder.push_back({ { "h", h }, { "sup_bias", sup } });
        }
        j["sup_bias"] = ladder;
        if (probe.slope) {
          j["slope"] = *probe.slope;
        }
        write_output(common.output, j.dump(2));
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "ERROR:parse: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "ERROR:numeric: " << e.what()
              << " (achieved tolerance " << e.achieved_tolerance() << ")\n";
    return kExitNumeric;
  } catch (const IsolatedPointError& e) {
    std::cerr << "ERROR:numeric: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ERROR:config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "ERROR:config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    std::cerr << "ERROR:config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "ERROR:numeric: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}
