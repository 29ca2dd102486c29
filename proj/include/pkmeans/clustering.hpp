#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pkmeans/dataset.hpp"

namespace pkmeans {

enum class StopReason { labels_stable, tol_reached, max_iter };

inline const char* to_string(StopReason s) {
  switch (s) {
    case StopReason::labels_stable: return "labels_stable";
    case StopReason::tol_reached: return "tol_reached";
    case StopReason::max_iter: return "max_iter";
  }
  return "unknown";
}

struct LloydParams {
  int max_iter = 500;
  double tol = 1e-10;  // relative error decrease below which we stop
};

struct ClusteringResult {
  int k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;          // k x dim, row-major
  std::vector<int> labels;                // one per point, in [0, k)
  double error = 0.0;
  int iterations = 0;
  std::vector<double> initial_centroids;  // the saved seeds c^0
  StopReason stop = StopReason::labels_stable;
  std::vector<double> error_history;      // error after each iteration

  std::span<const double> centroid(int j) const {
    return {centroids.data() + static_cast<std::size_t>(j) * dim, dim};
  }
};

// Nearest-centroid labels under squared Euclidean distance; ties go to the
// lowest centroid index.
inline std::vector<int> assign(const Dataset& data, std::span<const double> centroids) {
  const std::size_t d = data.dim();
  if (centroids.empty() || centroids.size() % d != 0)
    throw std::invalid_argument("assign: centroid block does not match dataset dimension");
  const std::size_t k = centroids.size() / d;

  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dist = squared_distance(x, centroids.subspan(j * d, d));
      if (dist < best) {
        best = dist;
        arg = static_cast<int>(j);
      }
    }
    labels[i] = arg;
  }
  return labels;
}

inline double clustering_error(const Dataset& data, std::span<const double> centroids,
                               const std::vector<int>& labels) {
  const std::size_t d = data.dim();
  double e = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    e += squared_distance(data.point(i), centroids.subspan(static_cast<std::size_t>(labels[i]) * d, d));
  return e;
}

namespace detail {

// Means of the labeled clusters, accumulated in point order.
inline void update_means(const Dataset& data, const std::vector<int>& labels, int k,
                         std::vector<double>& centroids, std::vector<std::size_t>& counts) {
  const std::size_t d = data.dim();
  std::fill(centroids.begin(), centroids.end(), 0.0);
  counts.assign(k, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    double* c = centroids.data() + static_cast<std::size_t>(labels[i]) * d;
    for (std::size_t j = 0; j < d; ++j) c[j] += x[j];
    ++counts[labels[i]];
  }
  for (int j = 0; j < k; ++j) {
    if (counts[j] == 0) continue;
    double* c = centroids.data() + static_cast<std::size_t>(j) * d;
    for (std::size_t t = 0; t < d; ++t) c[t] /= static_cast<double>(counts[j]);
  }
}

// An empty cluster takes over the point farthest from its current centroid.
// Returns whether any repair happened; the caller must refresh the means so
// centroids stay consistent with the relabeling.
inline bool repair_empty_clusters(const Dataset& data, std::vector<int>& labels, int k,
                                  std::vector<double>& centroids,
                                  std::vector<std::size_t>& counts) {
  const std::size_t d = data.dim();
  bool repaired = false;
  for (int j = 0; j < k; ++j) {
    if (counts[j] != 0) continue;
    double far_dist = -1.0;
    std::size_t far_idx = data.size();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (counts[labels[i]] <= 1) continue;  // do not empty the donor
      const double dist =
          squared_distance(data.point(i),
                           std::span<const double>(centroids).subspan(
                               static_cast<std::size_t>(labels[i]) * d, d));
      if (dist > far_dist) {
        far_dist = dist;
        far_idx = i;
      }
    }
    if (far_idx == data.size()) continue;  // nothing movable (duplicate-only data)
    const auto x = data.point(far_idx);
    std::copy(x.begin(), x.end(), centroids.begin() + static_cast<std::size_t>(j) * d);
    --counts[labels[far_idx]];
    labels[far_idx] = j;
    ++counts[j];
    repaired = true;
  }
  return repaired;
}

}  // namespace detail

// Lloyd iteration from the given initial centroids. Stops when labels no
// longer change, when the relative error decrease drops below tol, or at
// max_iter, whichever comes first.
inline ClusteringResult lloyd(const Dataset& data, std::span<const double> init,
                              LloydParams params = {}) {
  const std::size_t d = data.dim();
  if (init.empty() || init.size() % d != 0)
    throw std::invalid_argument("lloyd: initial centroids do not match dataset dimension");
  const int k = static_cast<int>(init.size() / d);
  if (static_cast<std::size_t>(k) > data.size())
    throw std::invalid_argument("lloyd: k exceeds point count");

  ClusteringResult res;
  res.k = k;
  res.dim = d;
  res.initial_centroids.assign(init.begin(), init.end());
  res.centroids.assign(init.begin(), init.end());

  std::vector<int> labels = assign(data, res.centroids);
  std::vector<std::size_t> counts;
  double prev_error = clustering_error(data, res.centroids, labels);
  res.error_history.push_back(prev_error);
  res.stop = StopReason::max_iter;

  int iter = 0;
  while (iter < params.max_iter) {
    ++iter;
    detail::update_means(data, labels, k, res.centroids, counts);
    if (detail::repair_empty_clusters(data, labels, k, res.centroids, counts))
      detail::update_means(data, labels, k, res.centroids, counts);
    std::vector<int> next = assign(data, res.centroids);
    const double err = clustering_error(data, res.centroids, next);
    res.error_history.push_back(err);
    const bool stable = (next == labels);
    labels = std::move(next);
    if (stable) {
      res.stop = StopReason::labels_stable;
      prev_error = err;
      break;
    }
    if (prev_error > 0.0 && (prev_error - err) < params.tol * prev_error) {
      res.stop = StopReason::tol_reached;
      prev_error = err;
      break;
    }
    prev_error = err;
  }

  res.labels = std::move(labels);
  res.error = prev_error;
  res.iterations = iter;
  return res;
}

struct FarthestFirstInit {
  std::vector<double> centroids;     // k x dim
  std::vector<std::size_t> indices;  // which data points were chosen
};

// Deterministic seeding: start at the point of minimum norm, then repeatedly
// add the point maximizing the minimum distance to the seeds chosen so far.
// Ties break to the lowest point index. The first k seeds for any smaller k
// are a prefix of the result.
inline FarthestFirstInit farthest_first_init(const Dataset& data, int k) {
  if (k < 1) throw std::invalid_argument("farthest_first_init: k must be >= 1");
  if (static_cast<std::size_t>(k) > data.size())
    throw std::invalid_argument("farthest_first_init: k exceeds point count");
  const std::size_t d = data.dim();

  std::size_t first = 0;
  double best_norm = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    double n2 = 0.0;
    for (double v : data.point(i)) n2 += v * v;
    if (n2 < best_norm) {
      best_norm = n2;
      first = i;
    }
  }

  FarthestFirstInit out;
  out.indices.reserve(k);
  out.centroids.reserve(static_cast<std::size_t>(k) * d);
  out.indices.push_back(first);
  out.centroids.insert(out.centroids.end(), data.point(first).begin(), data.point(first).end());

  std::vector<double> min_dist(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    min_dist[i] = squared_distance(data.point(i), data.point(first));

  while (out.indices.size() < static_cast<std::size_t>(k)) {
    std::size_t far = 0;
    double far_dist = -1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (min_dist[i] > far_dist) {
        far_dist = min_dist[i];
        far = i;
      }
    }
    out.indices.push_back(far);
    out.centroids.insert(out.centroids.end(), data.point(far).begin(), data.point(far).end());
    for (std::size_t i = 0; i < data.size(); ++i)
      min_dist[i] = std::min(min_dist[i], squared_distance(data.point(i), data.point(far)));
  }
  return out;
}

struct SweepParams {
  LloydParams lloyd;
  int threads = 1;  // k values are independent, so results match at any count
};

struct SweepResult {
  std::vector<ClusteringResult> results;         // one per k, ascending
  std::vector<std::string> warnings;             // non-monotone error reports
};

// Runs Lloyd for every k in [k_min, k_max], each from the saved prefix of
// one farthest-first traversal computed at k_max.
inline SweepResult sweep(const Dataset& data, int k_min, int k_max, SweepParams params = {}) {
  if (k_min < 1 || k_min > k_max)
    throw std::invalid_argument("sweep: need 1 <= k_min <= k_max");
  if (static_cast<std::size_t>(k_max) > data.size())
    throw std::invalid_argument("sweep: k_max exceeds point count");

  const std::size_t d = data.dim();
  const FarthestFirstInit seeds = farthest_first_init(data, k_max);

  SweepResult out;
  out.results.resize(static_cast<std::size_t>(k_max - k_min) + 1);

  auto run_range = [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      std::span<const double> init(seeds.centroids.data(),
                                   static_cast<std::size_t>(k_min + j) * d);
      out.results[j] = lloyd(data, init, params.lloyd);
    }
  };

  const int n_jobs = k_max - k_min + 1;
  const int n_threads = std::max(1, std::min(params.threads, n_jobs));
  if (n_threads == 1) {
    run_range(0, n_jobs);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_jobs + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(n_jobs, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 1; i < out.results.size(); ++i) {
    const double prev = out.results[i - 1].error;
    const double cur = out.results[i].error;
    if (cur > prev * (1.0 + 1e-9))
      out.warnings.push_back("sweep: error increased from k=" +
                             std::to_string(out.results[i - 1].k) + " (" +
                             std::to_string(prev) + ") to k=" +
                             std::to_string(out.results[i].k) + " (" +
                             std::to_string(cur) + ")");
  }
  return out;
}

}  // namespace pkmeans
