#include "entrokit/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace entrokit {

DataSet::DataSet(std::vector<double> values, std::size_t dimension)
  : values_(std::move(values))
  , d_(dimension)
{
  if (d_ == 0) {
    throw std::invalid_argument("DataSet: dimension must be >= 1");
  }
  if (values_.empty() || values_.size() % d_ != 0) {
    throw std::invalid_argument("DataSet: need a nonempty n x d value block");
  }
  n_ = values_.size() / d_;
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("DataSet: non-finite entry");
    }
  }
}

std::vector<double> DataSet::axis_min() const
{
  std::vector<double> out(d_, 0.0);
  for (std::size_t a = 0; a < d_; ++a) {
    double m = values_[a];
    for (std::size_t i = 1; i < n_; ++i) {
      m = std::min(m, values_[i * d_ + a]);
    }
    out[a] = m;
  }
  return out;
}

std::vector<double> DataSet::axis_max() const
{
  std::vector<double> out(d_, 0.0);
  for (std::size_t a = 0; a < d_; ++a) {
    double m = values_[a];
    for (std::size_t i = 1; i < n_; ++i) {
      m = std::max(m, values_[i * d_ + a]);
    }
    out[a] = m;
  }
  return out;
}

} // namespace entrokit
