#include "entrokit/quadrature.hpp"

#include "entrokit/errors.hpp"
#include "entrokit/summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace entrokit {

namespace {

struct GaussNode {
  double x;
  double w;
};

// 16-node Gauss-Legendre rule on [-1, 1]
constexpr std::array<GaussNode, 16> kGauss16 = {{
  { -9.89400934991649939e-01, 2.71524594117540374e-02 },
  { -9.44575023073232600e-01, 6.22535239386477063e-02 },
  { -8.65631202387831755e-01, 9.51585116824925914e-02 },
  { -7.55404408355002999e-01, 1.24628971255534030e-01 },
  { -6.17876244402643771e-01, 1.49595988816576764e-01 },
  { -4.58016777657227370e-01, 1.69156519395002619e-01 },
  { -2.81603550779258915e-01, 1.82603415044923612e-01 },
  { -9.50125098376374544e-02, 1.89450610455068585e-01 },
  { 9.50125098376374544e-02, 1.89450610455068585e-01 },
  { 2.81603550779258915e-01, 1.82603415044923612e-01 },
  { 4.58016777657227370e-01, 1.69156519395002619e-01 },
  { 6.17876244402643771e-01, 1.49595988816576764e-01 },
  { 7.55404408355002999e-01, 1.24628971255534030e-01 },
  { 8.65631202387831755e-01, 9.51585116824925914e-02 },
  { 9.44575023073232600e-01, 6.22535239386477063e-02 },
  { 9.89400934991649939e-01, 2.71524594117540374e-02 },
}};

// Clamp breakpoints into (a, b), sort, dedupe.
std::vector<double> interior_breaks(std::span<const double> breakpoints, double a, double b)
{
  std::vector<double> cuts;
  for (double c : breakpoints) {
    if (std::isfinite(c) && c > a && c < b) {
      cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt)
{
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate: non-finite interval");
  }
  if (a == b) {
    return 0.0;
  }
  auto eval_panels = [&](std::size_t panels) {
    const double width = (b - a) / static_cast<double>(panels);
    KahanSum acc;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + static_cast<double>(p) * width;
      const double mid = lo + 0.5 * width;
      const double half = 0.5 * width;
      for (const auto& node : kGauss16) {
        acc.add(node.w * f(mid + half * node.x));
      }
    }
    return acc.value() * 0.5 * width;
  };

  double previous = eval_panels(1);
  double change = std::abs(previous);
  std::size_t panels = 1;
  for (int level = 1; level <= opt.max_doublings; ++level) {
    panels *= 2;
    const double current = eval_panels(panels);
    change = std::abs(current - previous);
    previous = current;
    if (change < opt.tolerance) {
      return current;
    }
  }
  throw NumericError("integrate: refinement cap reached before tolerance", change);
}

double integrate_segmented(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt)
{
  const std::vector<double> cuts = interior_breaks(breakpoints, a, b);
  if (cuts.empty()) {
    return integrate(f, a, b, opt);
  }
  QuadratureOptions per_segment = opt;
  per_segment.tolerance = opt.tolerance / static_cast<double>(cuts.size() + 1);
  KahanSum acc;
  double left = a;
  for (double cut : cuts) {
    acc.add(integrate(f, left, cut, per_segment));
    left = cut;
  }
  acc.add(integrate(f, left, b, per_segment));
  return acc.value();
}

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lower, std::span<const double> upper,
                     const std::vector<std::vector<double>>& breakpoints,
                     const QuadratureOptions& opt)
{
  const std::size_t d = lower.size();
  if (d == 0 || upper.size() != d) {
    throw std::invalid_argument("integrate_box: inconsistent bounds");
  }
  if (d == 1) {
    std::span<const double> cuts =
      breakpoints.empty() ? std::span<const double>{} : std::span<const double>(breakpoints[0]);
    return integrate_segmented([&](double x) { return f(std::span<const double>(&x, 1)); },
                               lower[0], upper[0], cuts, opt);
  }

  // Peel the first axis; the inner integral gets a tighter tolerance so the
  // outer refinement loop sees a consistent integrand.
  QuadratureOptions inner = opt;
  inner.tolerance = opt.tolerance * 0.1;
  inner.max_doublings = std::min(opt.max_doublings, 10);
  std::vector<std::vector<double>> inner_breaks(breakpoints.empty()
                                                  ? std::vector<std::vector<double>>{}
                                                  : std::vector<std::vector<double>>(
                                                      breakpoints.begin() + 1, breakpoints.end()));
  QuadratureOptions outer = opt;
  outer.max_doublings = std::min(opt.max_doublings, 10);
  std::span<const double> axis_cuts =
    breakpoints.empty() ? std::span<const double>{} : std::span<const double>(breakpoints[0]);

  auto slice = [&](double x0) {
    std::vector<double> point(d);
    point[0] = x0;
    auto g = [&](std::span<const double> rest) {
      for (std::size_t i = 1; i < d; ++i) {
        point[i] = rest[i - 1];
      }
      return f(point);
    };
    return integrate_box(g, lower.subspan(1), upper.subspan(1), inner_breaks, inner);
  };
  return integrate_segmented(slice, lower[0], upper[0], axis_cuts, outer);
}

} // namespace entrokit
