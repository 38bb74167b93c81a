#include "entrokit/kernels.hpp"

#include "entrokit/errors.hpp"
#include "entrokit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace entrokit {

namespace {

constexpr double kGaussianEvalRadius = 8.0;
constexpr double kDoubleExpEvalRadius = 40.0;
constexpr int kMaxPolynomialOrder = 16;

double legendre_value(std::span<const double> coeffs, double t)
{
  // coeffs[j] multiplies P_j; three-term recurrence.
  double p_prev = 1.0;
  double p_curr = t;
  double sum = coeffs.empty() ? 0.0 : coeffs[0] * p_prev;
  if (coeffs.size() > 1) {
    sum += coeffs[1] * p_curr;
  }
  for (std::size_t j = 2; j < coeffs.size(); ++j) {
    const double p_next =
      ((2.0 * static_cast<double>(j) - 1.0) * t * p_curr - (static_cast<double>(j) - 1.0) * p_prev) /
      static_cast<double>(j);
    p_prev = p_curr;
    p_curr = p_next;
    sum += coeffs[j] * p_curr;
  }
  return sum;
}

// Solve the small dense system A x = b in place (partial pivoting).
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b)
{
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
        pivot = r;
      }
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw std::runtime_error("polynomial kernel: singular moment system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) {
        a[r][c] -= factor * a[col][c];
      }
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t rr = m; rr-- > 0;) {
    double s = b[rr];
    for (std::size_t c = rr + 1; c < m; ++c) {
      s -= a[rr][c] * x[c];
    }
    x[rr] = s / a[rr][rr];
  }
  return x;
}

// Exact moment of a Legendre polynomial against u^k on [-1, 1], via fixed
// Gauss quadrature (polynomial integrand, so this is exact within rounding).
double legendre_monomial_moment(int k, int j)
{
  std::vector<double> coeffs(static_cast<std::size_t>(j) + 1, 0.0);
  coeffs.back() = 1.0;
  QuadratureOptions opt;
  opt.tolerance = 1e-13;
  return integrate(
    [&](double u) { return std::pow(u, k) * legendre_value(coeffs, u); }, -1.0, 1.0, opt);
}

// Max of |K| on the support via dense scan plus local ternary refinement.
double scan_sup_norm(const std::function<double(double)>& f, double radius)
{
  const int points = 20001;
  double best = 0.0;
  double best_t = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = -radius + 2.0 * radius * static_cast<double>(i) / (points - 1);
    const double v = std::abs(f(t));
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  const double step = 2.0 * radius / (points - 1);
  double lo = best_t - step;
  double hi = best_t + step;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (std::abs(f(m1)) < std::abs(f(m2))) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(best, std::abs(f(0.5 * (lo + hi))));
}

} // namespace

bool KernelSpec::compact_support() const noexcept
{
  return std::isfinite(support_radius_);
}

double KernelSpec::eval1d(double t) const
{
  switch (family_) {
    case KernelFamily::boxcar:
      return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
    case KernelFamily::epanechnikov:
      return (t >= -1.0 && t <= 1.0) ? 0.75 * (1.0 - t * t) : 0.0;
    case KernelFamily::gaussian:
      if (std::abs(t) > kGaussianEvalRadius) {
        return 0.0;
      }
      return std::exp(-0.5 * t * t) * 0.3989422804014326779; // (2*pi)^(-1/2)
    case KernelFamily::double_exponential:
      if (std::abs(t) > kDoubleExpEvalRadius) {
        return 0.0;
      }
      return 0.5 * std::exp(-std::abs(t));
    case KernelFamily::polynomial:
      return (t >= -1.0 && t <= 1.0) ? legendre_value(legendre_coeffs_, t) : 0.0;
  }
  return 0.0;
}

double KernelSpec::eval(std::span<const double> t) const
{
  if (t.size() != static_cast<std::size_t>(dimension_)) {
    throw std::invalid_argument("kernel eval: point dimension mismatch");
  }
  double product = 1.0;
  for (double ti : t) {
    if (!std::isfinite(ti)) {
      throw std::domain_error("kernel eval: non-finite input");
    }
    product *= eval1d(ti);
    if (product == 0.0) {
      return 0.0;
    }
  }
  return product;
}

KernelSpec KernelSpec::make(KernelFamily family, int dimension)
{
  if (dimension < 1) {
    throw std::invalid_argument("kernel: dimension must be >= 1");
  }
  if (family == KernelFamily::polynomial) {
    throw std::invalid_argument("kernel: polynomial family requires make_polynomial(order, d)");
  }
  KernelSpec k;
  k.family_ = family;
  k.dimension_ = dimension;
  k.order_ = 2;
  double sup1 = 1.0;
  double sq1 = 1.0;
  switch (family) {
    case KernelFamily::boxcar:
      k.support_radius_ = 0.5;
      k.eval_radius_ = 0.5;
      sup1 = 1.0;
      sq1 = 1.0;
      break;
    case KernelFamily::epanechnikov:
      k.support_radius_ = 1.0;
      k.eval_radius_ = 1.0;
      sup1 = 0.75;
      sq1 = 0.6;
      break;
    case KernelFamily::gaussian:
      k.support_radius_ = std::numeric_limits<double>::infinity();
      k.eval_radius_ = kGaussianEvalRadius;
      sup1 = 0.3989422804014326779;
      sq1 = 0.28209479177387814347; // 1/(2*sqrt(pi))
      break;
    case KernelFamily::double_exponential:
      k.support_radius_ = std::numeric_limits<double>::infinity();
      k.eval_radius_ = kDoubleExpEvalRadius;
      sup1 = 0.5;
      sq1 = 0.25;
      break;
    case KernelFamily::polynomial:
      break;
  }
  k.sup_norm_ = std::pow(sup1, dimension);
  k.sq_integral_ = std::pow(sq1, dimension);
  return k;
}

KernelSpec KernelSpec::make_polynomial(int order, int dimension)
{
  if (dimension < 1) {
    throw std::invalid_argument("kernel: dimension must be >= 1");
  }
  if (order < 2 || order % 2 != 0 || order > kMaxPolynomialOrder) {
    throw std::invalid_argument("polynomial kernel: order must be even, in [2, 16]");
  }

  // Even Legendre expansion K = sum_j a_{2j} P_{2j} on [-1, 1] subject to
  // ∫ u^k K du = (k == 0) for even k < order; odd moments vanish by symmetry
  // and the order-s moment is then automatically nonzero.
  const int terms = order / 2;
  std::vector<std::vector<double>> a(terms, std::vector<double>(terms, 0.0));
  std::vector<double> b(terms, 0.0);
  for (int row = 0; row < terms; ++row) {
    const int k = 2 * row;
    for (int col = 0; col < terms; ++col) {
      a[row][col] = legendre_monomial_moment(k, 2 * col);
    }
    b[row] = (k == 0) ? 1.0 : 0.0;
  }
  const std::vector<double> even = solve_dense(std::move(a), std::move(b));

  KernelSpec k;
  k.family_ = KernelFamily::polynomial;
  k.dimension_ = dimension;
  k.order_ = order;
  k.support_radius_ = 1.0;
  k.eval_radius_ = 1.0;
  k.legendre_coeffs_.assign(static_cast<std::size_t>(order) - 1, 0.0);
  for (int j = 0; j < terms; ++j) {
    k.legendre_coeffs_[static_cast<std::size_t>(2 * j)] = even[static_cast<std::size_t>(j)];
  }

  double sq1 = 0.0;
  for (std::size_t j = 0; j < k.legendre_coeffs_.size(); ++j) {
    const double c = k.legendre_coeffs_[j];
    sq1 += c * c * 2.0 / (2.0 * static_cast<double>(j) + 1.0);
  }
  const double sup1 =
    scan_sup_norm([&](double t) { return legendre_value(k.legendre_coeffs_, t); }, 1.0);
  k.sup_norm_ = std::pow(sup1, dimension);
  k.sq_integral_ = std::pow(sq1, dimension);
  return k;
}

KernelSpec KernelSpec::parse(const std::string& name, int dimension)
{
  if (name == "boxcar") {
    return make(KernelFamily::boxcar, dimension);
  }
  if (name == "epanechnikov") {
    return make(KernelFamily::epanechnikov, dimension);
  }
  if (name == "gaussian") {
    return make(KernelFamily::gaussian, dimension);
  }
  if (name == "double_exponential") {
    return make(KernelFamily::double_exponential, dimension);
  }
  if (name.rfind("poly:s=", 0) == 0) {
    const std::string digits = name.substr(7);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("kernel: bad polynomial order in '" + name + "'");
    }
    return make_polynomial(std::stoi(digits), dimension);
  }
  throw std::invalid_argument("kernel: unknown name '" + name + "'");
}

std::string KernelSpec::name() const
{
  switch (family_) {
    case KernelFamily::boxcar:
      return "boxcar";
    case KernelFamily::epanechnikov:
      return "epanechnikov";
    case KernelFamily::gaussian:
      return "gaussian";
    case KernelFamily::double_exponential:
      return "double_exponential";
    case KernelFamily::polynomial:
      return "poly:s=" + std::to_string(order_);
  }
  return "?";
}

std::vector<KernelMoment> kernel_moments(const KernelSpec& kernel, int max_degree)
{
  if (max_degree < 0 || max_degree > kernel.order()) {
    throw std::invalid_argument("kernel_moments: max_degree must be in [0, order]");
  }
  const int d = kernel.dimension();
  const double radius = kernel.eval_radius();

  // Per-axis moments by 1-d quadrature; mixed moments multiply across axes
  // since the kernel is a product.
  QuadratureOptions opt;
  opt.tolerance = 1e-10;
  std::vector<double> axis_moment(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    const std::array<double, 1> zero = { 0.0 };
    axis_moment[static_cast<std::size_t>(deg)] = integrate_segmented(
      [&](double t) { return std::pow(t, deg) * kernel.eval1d(t); }, -radius, radius,
      std::span<const double>(zero), opt);
  }

  std::vector<KernelMoment> out;
  std::vector<int> index(static_cast<std::size_t>(d), 0);
  auto emit = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == d) {
      double value = 1.0;
      for (int j : index) {
        value *= axis_moment[static_cast<std::size_t>(j)];
      }
      out.push_back({ index, value });
      return;
    }
    for (int j = 0; j <= remaining; ++j) {
      index[static_cast<std::size_t>(axis)] = j;
      self(self, axis + 1, remaining - j);
    }
  };
  emit(emit, 0, max_degree);

  // canonical order: total degree, then lexicographic
  std::sort(out.begin(), out.end(), [](const KernelMoment& a, const KernelMoment& b) {
    int da = 0;
    int db = 0;
    for (int v : a.index) {
      da += v;
    }
    for (int v : b.index) {
      db += v;
    }
    if (da != db) {
      return da < db;
    }
    return a.index < b.index;
  });
  return out;
}

} // namespace entrokit
