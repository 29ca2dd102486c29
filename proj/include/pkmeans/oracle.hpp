#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pkmeans/dataset.hpp"
#include "pkmeans/rng.hpp"
#include "pkmeans/synth.hpp"

namespace pkmeans {

enum class McShape { sphere, half_sphere };

// Sampling estimates of the closed-form moments: centroid offset along the
// symmetry axis (axis 0) and mean squared deviation about the empirical
// centroid, with standard errors for both.
struct McMoments {
  double mean_offset = 0.0;
  double offset_se = 0.0;
  double mean_sq_dev = 0.0;
  double sq_dev_se = 0.0;
  std::size_t samples = 0;
};

inline McMoments mc_moments(int dim, double radius, McShape shape, std::size_t samples,
                            std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("mc_moments: need at least 1000 samples");
  const Dataset pts = shape == McShape::sphere
                          ? sample_ball(dim, radius, static_cast<int>(samples), seed)
                          : generate_shape(SynthShape::half_sphere, dim, radius, 0.0,
                                           static_cast<int>(samples), seed);

  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto x = pts.point(i);
    for (int j = 0; j < dim; ++j) mean[j] += x[j];
  }
  for (int j = 0; j < dim; ++j) mean[j] /= static_cast<double>(samples);

  double sum_dev = 0.0, sum_dev2 = 0.0, sum_axis = 0.0, sum_axis2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto x = pts.point(i);
    double dev = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double diff = x[j] - mean[j];
      dev += diff * diff;
    }
    sum_dev += dev;
    sum_dev2 += dev * dev;
    sum_axis += x[0];
    sum_axis2 += x[0] * x[0];
  }

  const double n = static_cast<double>(samples);
  McMoments m;
  m.samples = samples;
  m.mean_offset = sum_axis / n;
  m.mean_sq_dev = sum_dev / n;
  const double var_axis = std::max(0.0, sum_axis2 / n - m.mean_offset * m.mean_offset);
  const double var_dev = std::max(0.0, sum_dev2 / n - m.mean_sq_dev * m.mean_sq_dev);
  m.offset_se = std::sqrt(var_axis / n);
  m.sq_dev_se = std::sqrt(var_dev / n);
  return m;
}

struct BruteForceResult {
  double min_error = 0.0;
  std::vector<int> best_labels;  // restricted-growth canonical form
};

// Exhaustive k-means over all partitions of the points into exactly k
// nonempty blocks, enumerated as restricted growth strings. Only sized for
// tiny instances.
inline BruteForceResult brute_force_kmeans(const Dataset& data, int k) {
  const std::size_t n = data.size();
  if (n > 12 || k > 4)
    throw std::invalid_argument("brute_force_kmeans: instance too large (need N <= 12, k <= 4)");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("brute_force_kmeans: need 1 <= k <= N");
  const std::size_t d = data.dim();

  // error = sum ||x||^2 - sum_b ||block sum||^2 / block count
  double total_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (double v : data.point(i)) total_sq += v * v;

  BruteForceResult best;
  best.min_error = std::numeric_limits<double>::infinity();

  std::vector<int> labels(n, 0);
  std::vector<double> block_sums(static_cast<std::size_t>(k) * d);
  std::vector<int> block_counts(k);

  auto evaluate = [&]() {
    std::fill(block_sums.begin(), block_sums.end(), 0.0);
    std::fill(block_counts.begin(), block_counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = data.point(i);
      double* s = block_sums.data() + static_cast<std::size_t>(labels[i]) * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += x[j];
      ++block_counts[labels[i]];
    }
    double reduction = 0.0;
    for (int b = 0; b < k; ++b) {
      const double* s = block_sums.data() + static_cast<std::size_t>(b) * d;
      double s2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) s2 += s[j] * s[j];
      reduction += s2 / block_counts[b];
    }
    const double err = total_sq - reduction;
    if (err < best.min_error) {
      best.min_error = err;
      best.best_labels = labels;
    }
  };

  // Recursive restricted-growth enumeration with exactly k blocks.
  auto recurse = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == n) {
      if (used == k) evaluate();
      return;
    }
    // Prune: remaining points must be able to open the missing blocks.
    if (static_cast<std::size_t>(k - used) > n - i) return;
    const int limit = std::min(used, k - 1);
    for (int b = 0; b <= limit; ++b) {
      labels[i] = b;
      self(self, i + 1, b == used ? used + 1 : used);
    }
  };
  recurse(recurse, 0, 0);

  if (best.min_error < 0.0 && best.min_error > -1e-9) best.min_error = 0.0;
  return best;
}

}  // namespace pkmeans
