#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkmeans/dataset.hpp"

namespace pkmeans {

struct DensityFilterConfig {
  double radius = 0.0;    // <= 0 selects the auto heuristic
  int min_neighbors = 1;  // points with fewer neighbors than this are removed
};

struct DensityFilterResult {
  Dataset kept;
  std::vector<std::size_t> removed_indices;  // ascending
  double radius_used = 0.0;
  std::vector<std::string> warnings;
};

// Single-pass density filter: a point's density is the number of other
// points within the radius; densities below min_neighbors are removed.
// Auto radius is 3x the median nearest-neighbor distance (a heuristic; the
// threshold itself is the caller's call).
inline DensityFilterResult density_filter(const Dataset& data, const DensityFilterConfig& cfg) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("density_filter: need at least 2 points");
  if (cfg.min_neighbors < 1)
    throw std::invalid_argument("density_filter: min_neighbors must be >= 1");

  DensityFilterResult res;
  double radius = cfg.radius;
  if (!(radius > 0.0)) {
    std::vector<double> nn2(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto xi = data.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d2 = squared_distance(xi, data.point(j));
        nn2[i] = std::min(nn2[i], d2);
        nn2[j] = std::min(nn2[j], d2);
      }
    }
    std::nth_element(nn2.begin(), nn2.begin() + (n - 1) / 2, nn2.end());
    radius = 3.0 * std::sqrt(nn2[(n - 1) / 2]);
  }
  res.radius_used = radius;

  const double r2 = radius * radius;
  std::vector<int> counts(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto xi = data.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(xi, data.point(j)) <= r2) {
        ++counts[i];
        ++counts[j];
      }
    }
  }

  const bool degenerate = !(radius > 0.0);
  if (degenerate)
    res.warnings.push_back(
        "density_filter: degenerate data (median nearest-neighbor distance is 0); "
        "nothing removed");

  std::vector<double> kept_values;
  kept_values.reserve(data.values().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!degenerate && counts[i] < cfg.min_neighbors) {
      res.removed_indices.push_back(i);
    } else {
      const auto x = data.point(i);
      kept_values.insert(kept_values.end(), x.begin(), x.end());
    }
  }
  if (kept_values.empty()) {
    res.warnings.push_back("density_filter: every point fell below the density threshold");
    res.kept = data;  // refuse to return an empty dataset
    res.removed_indices.clear();
    return res;
  }
  res.kept = Dataset(data.dim(), std::move(kept_values));
  return res;
}

}  // namespace pkmeans
