#pragma once

#include <span>
#include <string>
#include <vector>

namespace entrokit {

enum class KernelFamily {
  boxcar,
  epanechnikov,
  gaussian,
  double_exponential,
  polynomial,
};

// Product-form kernel on R^d with its analytic constants. Immutable after
// construction, safe to share across threads.
//
// Conventions baked in here:
//  - boxcar is 1 on the half-open cube [-1/2, 1/2)^d (right continuous, so
//    evaluation at ties is well defined);
//  - gaussian evaluation truncates at |t| > 8 per axis (relative mass error
//    < 1e-14), double_exponential at |t| > 40;
//  - polynomial kernels of even order s live on [-1, 1] and are built by
//    Legendre moment matching.
class KernelSpec {
public:
  static KernelSpec make(KernelFamily family, int dimension = 1);
  static KernelSpec make_polynomial(int order, int dimension = 1);
  // "boxcar" | "epanechnikov" | "gaussian" | "double_exponential" | "poly:s=<int>"
  static KernelSpec parse(const std::string& name, int dimension = 1);

  KernelFamily family() const noexcept { return family_; }
  int dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }

  // Per-axis half width of the support; +inf for the unbounded families.
  double support_radius() const noexcept { return support_radius_; }
  // Finite per-axis radius outside which eval returns exactly 0.
  double eval_radius() const noexcept { return eval_radius_; }
  bool compact_support() const noexcept;

  double sup_norm() const noexcept { return sup_norm_; }    // kappa over R^d
  double sq_integral() const noexcept { return sq_integral_; } // ∫ K^2 over R^d

  // K(t); product across axes. Throws std::domain_error on non-finite input.
  double eval(std::span<const double> t) const;
  // Single-axis factor.
  double eval1d(double t) const;

  std::string name() const;

private:
  KernelSpec() = default;

  KernelFamily family_ = KernelFamily::boxcar;
  int dimension_ = 1;
  int order_ = 2;
  double support_radius_ = 0.5;
  double eval_radius_ = 0.5;
  double sup_norm_ = 1.0;
  double sq_integral_ = 1.0;
  std::vector<double> legendre_coeffs_; // polynomial family only
};

struct KernelMoment {
  std::vector<int> index; // multi-index (j_1, ..., j_d)
  double value;           // ∫ t^j K(t) dt
};

// Numerically integrated mixed moments for all multi-indices of total degree
// <= max_degree (degree 0 is the normalization integral). Requires
// max_degree <= kernel order.
std::vector<KernelMoment> kernel_moments(const KernelSpec& kernel, int max_degree);

} // namespace entrokit
