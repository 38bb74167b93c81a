#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace entrokit {

// Kahan-Neumaier compensated accumulator. Callers keep a canonical summation
// order; the compensation keeps partitioned reductions consistent to ~1e-16
// relative, and fixed order makes repeated runs bit-identical.
class KahanSum {
public:
  void add(double x) noexcept
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept
{
  KahanSum acc;
  for (double x : xs) {
    acc.add(x);
  }
  return acc.value();
}

} // namespace entrokit
