#include "entrokit/models.hpp"

#include "entrokit/quadrature.hpp"
#include "entrokit/rng.hpp"
#include "entrokit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace entrokit {

namespace {

constexpr double kInv2Pi = 0.15915494309189533577;

double normal_pdf1d(double x, double sigma)
{
  const double z = x / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

// Dense scan plus ternary refinement for the mode of a smooth 1-d density.
double scan_sup(const std::function<double(double)>& f, double lo, double hi)
{
  const int points = 20001;
  double best = 0.0;
  double best_x = lo;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double step = (hi - lo) / (points - 1);
  double a = best_x - step;
  double b = best_x + step;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return std::max(best, f(0.5 * (a + b)));
}

std::map<std::string, std::string> parse_params(const std::string& text)
{
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("model: expected key=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_double(const std::map<std::string, std::string>& params, const std::string& key,
                    double fallback)
{
  const auto it = params.find(key);
  if (it == params.end()) {
    return fallback;
  }
  std::size_t used = 0;
  const double v = std::stod(it->second, &used);
  if (used != it->second.size()) {
    throw std::invalid_argument("model: bad numeric value for '" + key + "'");
  }
  return v;
}

} // namespace

bool SupportBox::bounded() const noexcept
{
  for (std::size_t a = 0; a < lower.size(); ++a) {
    if (!std::isfinite(lower[a]) || !std::isfinite(upper[a])) {
      return false;
    }
  }
  return !lower.empty();
}

bool SupportBox::contains(std::span<const double> x) const noexcept
{
  if (x.size() != lower.size()) {
    return false;
  }
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] < lower[a] || x[a] > upper[a]) {
      return false;
    }
  }
  return true;
}

DataSet DistributionModel::sample(std::size_t n, std::uint64_t seed) const
{
  if (n == 0) {
    throw std::invalid_argument("sample: n must be >= 1");
  }
  std::vector<double> values;
  values.reserve(n * dimension_);
  sampler_(n, seed, values);
  return DataSet(std::move(values), dimension_);
}

std::vector<std::vector<double>> DistributionModel::pdf_breakpoints() const
{
  std::vector<std::vector<double>> cuts(dimension_);
  for (std::size_t a = 0; a < dimension_; ++a) {
    if (std::isfinite(support_.lower[a])) {
      cuts[a].push_back(support_.lower[a]);
    }
    if (std::isfinite(support_.upper[a])) {
      cuts[a].push_back(support_.upper[a]);
    }
  }
  return cuts;
}

std::pair<double, double> DistributionModel::log_pdf_square_probe(std::size_t draws,
                                                                  std::uint64_t seed) const
{
  const DataSet data = sample(draws, seed);
  KahanSum mean;
  double max_value = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = pdf_(data.row(i));
    const double l2 = std::log(f) * std::log(f);
    mean.add(l2);
    max_value = std::max(max_value, l2);
  }
  return { mean.value() / static_cast<double>(draws), max_value };
}

DistributionModel DistributionModel::uniform(std::size_t dimension)
{
  if (dimension == 0) {
    throw std::invalid_argument("uniform: dimension must be >= 1");
  }
  DistributionModel m;
  m.name_ = dimension == 1 ? "uniform" : "uniform:d=" + std::to_string(dimension);
  m.dimension_ = dimension;
  m.support_ = SupportBox{ std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 1.0) };
  m.pdf_ = [support = m.support_](std::span<const double> x) {
    return support.contains(x) ? 1.0 : 0.0;
  };
  m.sampler_ = [dimension](std::size_t n, std::uint64_t seed, std::vector<double>& out) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n * dimension; ++i) {
      out.push_back(rng.uniform01());
    }
  };
  m.entropy_ = 0.0;
  m.sup_density_ = 1.0;
  m.bounded_away_ = true;
  m.smoothness_order_ = kInfiniteSmoothness;
  return m;
}

DistributionModel DistributionModel::normal(double sigma, std::size_t dimension)
{
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("normal: sigma must be positive");
  }
  if (dimension == 0) {
    throw std::invalid_argument("normal: dimension must be >= 1");
  }
  DistributionModel m;
  {
    std::ostringstream name;
    name << "normal:sigma=" << sigma;
    if (dimension > 1) {
      name << ",d=" << dimension;
    }
    m.name_ = name.str();
  }
  m.dimension_ = dimension;
  const double inf = std::numeric_limits<double>::infinity();
  m.support_ = SupportBox{ std::vector<double>(dimension, -inf), std::vector<double>(dimension, inf) };
  m.pdf_ = [sigma, dimension](std::span<const double> x) {
    double q = 0.0;
    for (double xi : x) {
      q += xi * xi;
    }
    const double norm =
      std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * static_cast<double>(dimension));
    return norm * std::exp(-0.5 * q / (sigma * sigma));
  };
  m.sampler_ = [sigma, dimension](std::size_t n, std::uint64_t seed, std::vector<double>& out) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n * dimension; ++i) {
      out.push_back(sigma * rng.normal());
    }
  };
  m.entropy_ = 0.5 * static_cast<double>(dimension) *
               std::log(2.0 * std::numbers::pi * std::numbers::e * sigma * sigma);
  m.sup_density_ =
    std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * static_cast<double>(dimension));
  m.bounded_away_ = false;
  m.smoothness_order_ = kInfiniteSmoothness;
  return m;
}

DistributionModel DistributionModel::exponential(double lambda)
{
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("exponential: lambda must be positive");
  }
  DistributionModel m;
  {
    std::ostringstream name;
    name << "expo:lambda=" << lambda;
    m.name_ = name.str();
  }
  m.dimension_ = 1;
  m.support_ = SupportBox{ { 0.0 }, { std::numeric_limits<double>::infinity() } };
  m.pdf_ = [lambda](std::span<const double> x) {
    return x[0] >= 0.0 ? lambda * std::exp(-lambda * x[0]) : 0.0;
  };
  m.sampler_ = [lambda](std::size_t n, std::uint64_t seed, std::vector<double>& out) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(rng.exponential(lambda));
    }
  };
  m.entropy_ = 1.0 - std::log(lambda);
  m.sup_density_ = lambda;
  m.bounded_away_ = false;
  m.smoothness_order_ = kInfiniteSmoothness;
  return m;
}

DistributionModel DistributionModel::raised_cosine()
{
  DistributionModel m;
  m.name_ = "cosine";
  m.dimension_ = 1;
  m.support_ = SupportBox{ { 0.0 }, { 1.0 } };
  m.pdf_ = [](std::span<const double> x) {
    if (x[0] < 0.0 || x[0] > 1.0) {
      return 0.0;
    }
    return 1.0 - std::cos(2.0 * std::numbers::pi * x[0]);
  };
  // rejection from U[0,1] x U[0,2]; exact and seed-reproducible
  m.sampler_ = [](std::size_t n, std::uint64_t seed, std::vector<double>& out) {
    Rng rng(seed);
    while (out.size() < n) {
      const double x = rng.uniform01();
      const double y = 2.0 * rng.uniform01();
      if (y <= 1.0 - std::cos(2.0 * std::numbers::pi * x)) {
        out.push_back(x);
      }
    }
  };
  m.entropy_ = std::log(2.0) - 1.0;
  m.sup_density_ = 2.0;
  m.bounded_away_ = false; // touches zero at both support faces
  m.smoothness_order_ = kInfiniteSmoothness;
  return m;
}

DistributionModel DistributionModel::gaussian_mixture(double weight, double mu)
{
  if (!(weight > 0.0 && weight < 1.0)) {
    throw std::invalid_argument("gaussian_mixture: weight must lie in (0, 1)");
  }
  if (!std::isfinite(mu)) {
    throw std::invalid_argument("gaussian_mixture: mu must be finite");
  }
  DistributionModel m;
  {
    std::ostringstream name;
    name << "gaussmix:w=" << weight << ",mu=" << mu;
    m.name_ = name.str();
  }
  m.dimension_ = 1;
  const double inf = std::numeric_limits<double>::infinity();
  m.support_ = SupportBox{ { -inf }, { inf } };
  auto pdf1 = [weight, mu](double x) {
    return weight * normal_pdf1d(x, 1.0) + (1.0 - weight) * normal_pdf1d(x - mu, 1.0);
  };
  m.pdf_ = [pdf1](std::span<const double> x) { return pdf1(x[0]); };
  m.sampler_ = [weight, mu](std::size_t n, std::uint64_t seed, std::vector<double>& out) {
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
      const bool first = rng.uniform01() < weight;
      const double z = rng.normal();
      out.push_back(first ? z : mu + z);
    }
  };
  // No closed form for a mixture; pin the reference value by high-accuracy
  // quadrature at construction.
  const double lo = std::min(0.0, mu) - 10.0;
  const double hi = std::max(0.0, mu) + 10.0;
  QuadratureOptions opt;
  opt.tolerance = 1e-11;
  m.entropy_ = integrate(
    [&](double x) {
      const double f = pdf1(x);
      return f > 0.0 ? -f * std::log(f) : 0.0;
    },
    lo, hi, opt);
  m.sup_density_ = scan_sup(pdf1, lo, hi);
  m.bounded_away_ = false;
  m.smoothness_order_ = kInfiniteSmoothness;
  return m;
}

DistributionModel DistributionModel::parse(const std::string& text)
{
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto params = rest.empty() ? std::map<std::string, std::string>{} : parse_params(rest);

  if (head == "uniform") {
    return uniform(static_cast<std::size_t>(param_double(params, "d", 1.0)));
  }
  if (head == "normal") {
    return normal(param_double(params, "sigma", 1.0),
                  static_cast<std::size_t>(param_double(params, "d", 1.0)));
  }
  if (head == "expo") {
    return exponential(param_double(params, "lambda", 1.0));
  }
  if (head == "cosine") {
    return raised_cosine();
  }
  if (head == "gaussmix") {
    return gaussian_mixture(param_double(params, "w", 0.5), param_double(params, "mu", 3.0));
  }
  throw std::invalid_argument("model: unknown name '" + head + "'");
}

SupportBox estimate_support(const DataSet& data, const SupportBox* known)
{
  const std::size_t d = data.dimension();
  const double shrink = 1.0 / std::log(std::max<std::size_t>(data.size(), 3));
  std::vector<double> lo = data.axis_min();
  std::vector<double> hi = data.axis_max();
  for (std::size_t a = 0; a < d; ++a) {
    double l = lo[a] + shrink;
    double u = hi[a] - shrink;
    if (!(l < u)) { // shrink crossed over; keep the raw range
      l = lo[a];
      u = hi[a];
    }
    if (known != nullptr && known->lower.size() == d) {
      l = std::max(l, known->lower[a]);
      u = std::min(u, known->upper[a]);
    }
    if (!(l < u)) {
      l = lo[a];
      u = hi[a];
    }
    lo[a] = l;
    hi[a] = u;
  }
  return SupportBox{ std::move(lo), std::move(hi) };
}

} // namespace entrokit
