#pragma once

// Test-only reference implementations. Everything here is written as plain
// direct loops, independent of the library's evaluation paths, so agreement
// is meaningful.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracles {

// 1-d kernels by name, matching the documented conventions (half-open boxcar,
// gaussian truncated at 8, double exponential truncated at 40).
inline double kernel1d(const std::string& name, double t)
{
  if (name == "boxcar") {
    return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
  }
  if (name == "epanechnikov") {
    return (t >= -1.0 && t <= 1.0) ? 0.75 * (1.0 - t * t) : 0.0;
  }
  if (name == "gaussian") {
    return std::abs(t) > 8.0 ? 0.0 : std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
  }
  if (name == "double_exponential") {
    return std::abs(t) > 40.0 ? 0.0 : 0.5 * std::exp(-std::abs(t));
  }
  throw std::invalid_argument("oracle kernel: " + name);
}

// Naive direct-sum KDE at a point (1-d).
inline double kde(const std::string& kernel, std::span<const double> data, double h, double x)
{
  double sum = 0.0;
  for (double xi : data) {
    sum += kernel1d(kernel, (x - xi) / h);
  }
  return sum / (static_cast<double>(data.size()) * h);
}

// Naive resubstitution estimate: -(1/n) sum 1{f(Xi) >= gamma} log f(Xi).
inline double resubstitution(const std::string& kernel, std::span<const double> data, double h,
                             double gamma)
{
  double sum = 0.0;
  for (double xi : data) {
    const double f = kde(kernel, data, h, xi);
    if (f >= gamma) {
      sum += std::log(f);
    }
  }
  return -sum / static_cast<double>(data.size());
}

// Naive leave-one-out estimate; returns NaN when any leave-one-out density
// is non-positive.
inline double leave_one_out(const std::string& kernel, std::span<const double> data, double h)
{
  const std::size_t n = data.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        f += kernel1d(kernel, (data[i] - data[j]) / h);
      }
    }
    f /= static_cast<double>(n - 1) * h;
    if (!(f > 0.0)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    sum += std::log(f);
  }
  return -sum / static_cast<double>(n);
}

// Midpoint-rule Riemann integral with interval-count doubling until two
// successive refinements agree within tol.
inline double riemann(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-6, std::size_t start = 1001, int max_doublings = 14)
{
  auto midpoint = [&](std::size_t cells) {
    const double w = (b - a) / static_cast<double>(cells);
    double sum = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      sum += f(a + (static_cast<double>(i) + 0.5) * w);
    }
    return sum * w;
  };
  std::size_t cells = start;
  double previous = midpoint(cells);
  for (int level = 0; level < max_doublings; ++level) {
    cells *= 2;
    const double current = midpoint(cells);
    if (std::abs(current - previous) < tol) {
      return current;
    }
    previous = current;
  }
  return previous;
}

// Thresholded plug-in entropy of a 1-d KDE by the doubling Riemann rule.
inline double plugin_entropy(const std::string& kernel, std::span<const double> data, double h,
                             double gamma, double lo, double hi, double tol = 1e-6)
{
  return riemann(
    [&](double x) {
      const double f = kde(kernel, data, h, x);
      return f >= gamma ? -f * std::log(f) : 0.0;
    },
    lo, hi, tol);
}

inline double median(std::vector<double> xs)
{
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

} // namespace oracles
