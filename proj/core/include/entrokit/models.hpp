#pragma once

#include "entrokit/dataset.hpp"
#include "entrokit/density.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace entrokit {

// Axis-aligned support box; +/-inf entries mark unbounded axes.
struct SupportBox {
  std::vector<double> lower;
  std::vector<double> upper;

  bool bounded() const noexcept;
  bool contains(std::span<const double> x) const noexcept;
};

inline constexpr int kInfiniteSmoothness = std::numeric_limits<int>::max();

// Ground-truth distribution: density, seeded sampler, closed-form entropy and
// the metadata the harness conditions on. Immutable; samplers take explicit
// seeds and share no state.
class DistributionModel {
public:
  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return dimension_; }

  double pdf(std::span<const double> x) const { return pdf_(x); }
  const DensityFn& pdf_fn() const noexcept { return pdf_; }

  // n i.i.d. draws; identical (seed, n) give bit-identical output.
  DataSet sample(std::size_t n, std::uint64_t seed) const;

  double true_entropy() const noexcept { return entropy_; } // nats
  const SupportBox& support() const noexcept { return support_; }
  double sup_density() const noexcept { return sup_density_; }
  bool bounded_away_from_zero() const noexcept { return bounded_away_; }
  bool compact_support() const noexcept { return support_.bounded(); }
  int smoothness_order() const noexcept { return smoothness_order_; }

  // Finite support faces per axis; quadrature against the pdf must not
  // integrate across these.
  std::vector<std::vector<double>> pdf_breakpoints() const;

  // Empirical finiteness probe for log^2 pdf over sampled points: returns
  // (mean, max); both finite for every shipped model.
  std::pair<double, double> log_pdf_square_probe(std::size_t draws, std::uint64_t seed) const;

  static DistributionModel uniform(std::size_t dimension = 1);
  static DistributionModel normal(double sigma = 1.0, std::size_t dimension = 1);
  static DistributionModel exponential(double lambda);
  static DistributionModel raised_cosine();
  static DistributionModel gaussian_mixture(double weight, double mu);

  // "uniform[:d=2]" | "normal[:sigma=1][,d=2]" | "expo:lambda=2" | "cosine" |
  // "gaussmix:w=0.5,mu=3"
  static DistributionModel parse(const std::string& text);

private:
  DistributionModel() = default;

  std::string name_;
  std::size_t dimension_ = 1;
  DensityFn pdf_;
  std::function<void(std::size_t, std::uint64_t, std::vector<double>&)> sampler_;
  double entropy_ = 0.0;
  SupportBox support_;
  double sup_density_ = 1.0;
  bool bounded_away_ = false;
  int smoothness_order_ = kInfiniteSmoothness;
};

// Shrunken data-range support proxy for interval construction: per axis
// [min + 1/log n, max - 1/log n], intersected with `known` when supplied;
// falls back to the plain (intersected) range if the shrink crosses over.
SupportBox estimate_support(const DataSet& data, const SupportBox* known = nullptr);

} // namespace entrokit
