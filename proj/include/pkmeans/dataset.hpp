#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pkmeans {

// Immutable N x d point set, stored row-major.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::size_t dim, std::vector<double> values)
      : dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) throw std::invalid_argument("Dataset: dimension must be positive");
    if (values_.empty())
      throw std::invalid_argument("Dataset: at least one point required");
    if (values_.size() % dim_ != 0)
      throw std::invalid_argument("Dataset: " + std::to_string(values_.size()) +
                                  " values is not a multiple of dimension " +
                                  std::to_string(dim_));
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::invalid_argument("Dataset: non-finite coordinate");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : values_.size() / dim_; }

  std::span<const double> point(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace pkmeans
