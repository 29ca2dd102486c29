#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkmeans/dataset.hpp"
#include "pkmeans/rng.hpp"

namespace pkmeans {

struct SynthSpec {
  int clusters = 1;             // K
  int dim = 2;
  double radius = 1.0;          // R
  int points_per_cluster = 100;
  double min_separation = 3.0;  // centroid pairwise-distance floor, in units of R
  double shrink = 1.0;          // < 1 pulls centroids toward their mean
  std::uint64_t seed = 0;
  double placement_box = 0.0;   // hypercube side; <= 0 picks a default
  int noise_points = 0;         // uniform background points, for the outlier filter
  bool jitter = false;          // +/-10% variation of per-cluster counts
};

struct SynthData {
  Dataset data;
  std::vector<double> truth_centroids;  // K x dim
  std::vector<int> truth_labels;        // per point; background noise = -1
};

namespace detail {

// Uniform point in the d-ball of radius R about the origin: isotropic
// direction times R * u^(1/d). Consumes a fixed number of draws.
inline void ball_point(Rng& rng, int dim, double radius, double* out) {
  for (int j = 0; j < dim; j += 2) {
    double z0, z1;
    rng.next_normal_pair(z0, z1);
    out[j] = z0;
    if (j + 1 < dim) out[j + 1] = z1;
  }
  double norm2 = 0.0;
  for (int j = 0; j < dim; ++j) norm2 += out[j] * out[j];
  const double u = rng.next_double_pos();
  const double scale =
      norm2 > 0.0 ? radius * std::pow(u, 1.0 / dim) / std::sqrt(norm2) : 0.0;
  for (int j = 0; j < dim; ++j) out[j] *= scale;
}

// Stream ids for the sub-seeded generators.
constexpr std::uint64_t kPlacementStream = 0;
constexpr std::uint64_t kJitterStream = 1;
constexpr std::uint64_t kClusterStreamBase = 2;

}  // namespace detail

// n points uniform in the d-ball of radius R about the origin.
inline Dataset sample_ball(int dim, double radius, int n, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("sample_ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("sample_ball: radius must be > 0");
  if (n < 1) throw std::invalid_argument("sample_ball: need n >= 1");
  Rng rng(seed, detail::kClusterStreamBase);
  std::vector<double> values(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i)
    detail::ball_point(rng, dim, radius, values.data() + static_cast<std::size_t>(i) * dim);
  return Dataset(dim, std::move(values));
}

inline double default_placement_box(const SynthSpec& s) {
  const double spread = std::pow(static_cast<double>(s.clusters), 1.0 / s.dim);
  return s.min_separation * s.radius * (spread + 1.0) * 1.25;
}

// K ideal clusters: centroids placed by rejection sampling with a pairwise
// separation floor, then optionally shrunk toward their common mean, each
// cluster a uniform ball sample. Output order is cluster-major with any
// background noise last.
inline SynthData generate(const SynthSpec& s) {
  if (s.clusters < 1) throw std::invalid_argument("generate: clusters must be >= 1");
  if (s.dim < 1) throw std::invalid_argument("generate: dimension must be >= 1");
  if (!(s.radius > 0.0)) throw std::invalid_argument("generate: radius must be > 0");
  if (s.points_per_cluster < 1)
    throw std::invalid_argument("generate: points_per_cluster must be >= 1");
  if (!(s.shrink > 0.0 && s.shrink <= 1.0))
    throw std::invalid_argument("generate: shrink must be in (0, 1]");
  if (s.noise_points < 0) throw std::invalid_argument("generate: noise_points must be >= 0");

  const int d = s.dim;
  const double box = s.placement_box > 0.0 ? s.placement_box : default_placement_box(s);
  const double sep2 = s.min_separation * s.radius * s.min_separation * s.radius;

  // Centroid placement, bounded attempt budget.
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(s.clusters) * d);
  {
    Rng rng(s.seed, detail::kPlacementStream);
    constexpr int kBudget = 100000;
    int attempts = 0;
    std::vector<double> cand(d);
    while (centers.size() < static_cast<std::size_t>(s.clusters) * d) {
      if (++attempts > kBudget)
        throw std::runtime_error(
            "generate: centroid placement failed after " + std::to_string(kBudget) +
            " attempts; increase placement_box or lower min_separation/clusters");
      for (int j = 0; j < d; ++j) cand[j] = box * rng.next_double();
      bool ok = true;
      for (std::size_t c = 0; c < centers.size() / d && ok; ++c)
        if (squared_distance({cand.data(), cand.size()},
                             {centers.data() + c * d, static_cast<std::size_t>(d)}) < sep2)
          ok = false;
      if (ok) centers.insert(centers.end(), cand.begin(), cand.end());
    }
  }

  if (s.shrink < 1.0) {
    std::vector<double> mean(d, 0.0);
    for (int c = 0; c < s.clusters; ++c)
      for (int j = 0; j < d; ++j) mean[j] += centers[static_cast<std::size_t>(c) * d + j];
    for (int j = 0; j < d; ++j) mean[j] /= s.clusters;
    for (int c = 0; c < s.clusters; ++c)
      for (int j = 0; j < d; ++j) {
        double& v = centers[static_cast<std::size_t>(c) * d + j];
        v = mean[j] + s.shrink * (v - mean[j]);
      }
  }

  std::vector<int> counts(s.clusters, s.points_per_cluster);
  if (s.jitter) {
    Rng rng(s.seed, detail::kJitterStream);
    for (int c = 0; c < s.clusters; ++c) {
      const double u = rng.next_double();  // [0,1) -> [-10%, +10%)
      counts[c] = std::max(1, static_cast<int>(std::lround(
                                  s.points_per_cluster * (1.0 + 0.2 * (u - 0.5)))));
    }
  }

  SynthData out;
  out.truth_centroids = centers;
  std::vector<double> values;
  std::size_t total = 0;
  for (int c = 0; c < s.clusters; ++c) total += counts[c];
  total += s.noise_points;
  values.reserve(total * d);
  out.truth_labels.reserve(total);

  std::vector<double> pt(d);
  for (int c = 0; c < s.clusters; ++c) {
    Rng rng(s.seed, detail::kClusterStreamBase + static_cast<std::uint64_t>(c));
    for (int i = 0; i < counts[c]; ++i) {
      detail::ball_point(rng, d, s.radius, pt.data());
      for (int j = 0; j < d; ++j)
        values.push_back(centers[static_cast<std::size_t>(c) * d + j] + pt[j]);
      out.truth_labels.push_back(c);
    }
  }
  if (s.noise_points > 0) {
    Rng rng(s.seed, detail::kClusterStreamBase + static_cast<std::uint64_t>(s.clusters));
    for (int i = 0; i < s.noise_points; ++i) {
      for (int j = 0; j < d; ++j) values.push_back(box * rng.next_double());
      out.truth_labels.push_back(-1);
    }
  }

  out.data = Dataset(d, std::move(values));
  return out;
}

enum class SynthShape { half_sphere, dumbbell };

// Degenerate shapes from the error analysis. The half-sphere is the ball
// restricted to x0 >= 0 about the origin; the dumbbell is two full balls
// with centers 2L apart on axis 0, n/2 points each.
inline Dataset generate_shape(SynthShape shape, int dim, double radius, double L, int n,
                              std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("generate_shape: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("generate_shape: radius must be > 0");
  if (n < 1) throw std::invalid_argument("generate_shape: need n >= 1");

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * dim);
  std::vector<double> pt(dim);

  if (shape == SynthShape::half_sphere) {
    Rng rng(seed, detail::kClusterStreamBase);
    for (int i = 0; i < n; ++i) {
      detail::ball_point(rng, dim, radius, pt.data());
      pt[0] = std::fabs(pt[0]);  // fold onto one side of the equator plane
      values.insert(values.end(), pt.begin(), pt.end());
    }
  } else {
    if (!(L >= radius))
      throw std::invalid_argument("generate_shape: dumbbell requires L >= R");
    const int first = n / 2;
    for (int half = 0; half < 2; ++half) {
      Rng rng(seed, detail::kClusterStreamBase + static_cast<std::uint64_t>(half));
      const double center = half == 0 ? -L : L;
      const int count = half == 0 ? first : n - first;
      for (int i = 0; i < count; ++i) {
        detail::ball_point(rng, dim, radius, pt.data());
        pt[0] += center;
        values.insert(values.end(), pt.begin(), pt.end());
        pt[0] -= center;
      }
    }
  }
  return Dataset(dim, std::move(values));
}

}  // namespace pkmeans
