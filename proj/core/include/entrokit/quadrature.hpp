#pragma once

#include <functional>
#include <span>
#include <vector>

namespace entrokit {

struct QuadratureOptions {
  double tolerance = 1e-8; // absolute, on successive refinements
  int max_doublings = 14;  // panel count cap = 2^max_doublings
};

// Composite 16-node Gauss-Legendre over [a, b]; the panel count doubles until
// two successive estimates agree within the tolerance. Throws NumericError
// (with the achieved tolerance) when the cap is hit first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same, with interior breakpoints where the integrand may jump or kink;
// each smooth segment is refined independently.
double integrate_segmented(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt = {});

// Tensor-product version over an axis-aligned box, with optional per-axis
// breakpoints. Intended for small dimension (d <= 3).
double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lower, std::span<const double> upper,
                     const std::vector<std::vector<double>>& breakpoints = {},
                     const QuadratureOptions& opt = {});

} // namespace entrokit
