#include "pkmeans/clustering.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pkmeans/synth.hpp"

namespace pkmeans {
namespace {

Dataset line(std::initializer_list<double> xs) {
  return Dataset(1, std::vector<double>(xs));
}

TEST(Assign, NearestAndTieBreak) {
  Dataset two = line({0.0, 10.0});
  const std::vector<double> cents = {0.0, 10.0};
  EXPECT_EQ(assign(two, cents), (std::vector<int>{0, 1}));

  // Equidistant point goes to the lowest centroid index.
  Dataset mid = line({5.0});
  EXPECT_EQ(assign(mid, cents), (std::vector<int>{0}));

  Dataset pts(2, {0, 0, 1, 0, 9, 0});
  const std::vector<double> c2 = {0, 0, 10, 0};
  EXPECT_EQ(assign(pts, c2), (std::vector<int>{0, 0, 1}));
}

TEST(Assign, DimensionMismatch) {
  Dataset pts(2, {0, 0, 1, 1});
  const std::vector<double> bad = {0.0, 1.0, 2.0};
  EXPECT_THROW(assign(pts, bad), std::invalid_argument);
}

TEST(Lloyd, SingleClusterIsMeanAndVariance) {
  Dataset pts(1, {1.0, 2.0, 3.0, 10.0});
  const double mean = 4.0;
  double var = 0.0;
  for (double v : {1.0, 2.0, 3.0, 10.0}) var += (v - mean) * (v - mean);

  const std::vector<double> init = {0.0};
  const ClusteringResult r = lloyd(pts, init);
  EXPECT_DOUBLE_EQ(r.centroids[0], mean);
  EXPECT_NEAR(r.error, var, 1e-12 * var);
}

TEST(Lloyd, TwoPairsOnALine) {
  Dataset pts = line({0.0, 1.0, 10.0, 11.0});
  const std::vector<double> init = {0.0, 10.0};
  const ClusteringResult r = lloyd(pts, init);
  EXPECT_EQ(r.labels, (std::vector<int>{0, 0, 1, 1}));
  EXPECT_DOUBLE_EQ(r.centroids[0], 0.5);
  EXPECT_DOUBLE_EQ(r.centroids[1], 10.5);
  EXPECT_NEAR(r.error, 1.0, 1e-12);
  EXPECT_EQ(r.stop, StopReason::labels_stable);
  EXPECT_EQ(r.initial_centroids, init);
}

TEST(Lloyd, ConvergesToPlantedCenters) {
  SynthSpec spec;
  spec.clusters = 2;
  spec.dim = 2;
  spec.points_per_cluster = 500;
  spec.min_separation = 4.0;
  spec.seed = 7;
  const SynthData synth = generate(spec);

  const FarthestFirstInit init = farthest_first_init(synth.data, 2);
  const ClusteringResult r = lloyd(synth.data, init.centroids);

  // Each converged centroid sits within sampling noise of one true center.
  for (int j = 0; j < 2; ++j) {
    double best = 1e300;
    for (int t = 0; t < 2; ++t)
      best = std::min(best, squared_distance(r.centroid(j),
                                             {synth.truth_centroids.data() + 2 * t, 2}));
    EXPECT_LT(std::sqrt(best), 0.15);
  }
}

TEST(Lloyd, ErrorHistoryIsMonotone) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SynthSpec spec;
    spec.clusters = 4;
    spec.dim = 3;
    spec.points_per_cluster = 50;
    spec.min_separation = 2.5;
    spec.seed = seed;
    const SynthData synth = generate(spec);
    const FarthestFirstInit init = farthest_first_init(synth.data, 5);
    const ClusteringResult r = lloyd(synth.data, init.centroids);
    for (std::size_t t = 1; t < r.error_history.size(); ++t)
      EXPECT_LE(r.error_history[t],
                r.error_history[t - 1] * (1.0 + 1e-9) + 1e-12);
  }
}

TEST(Lloyd, ErrorRecomputableFromFields) {
  SynthSpec spec;
  spec.clusters = 3;
  spec.dim = 2;
  spec.points_per_cluster = 80;
  spec.seed = 3;
  const SynthData synth = generate(spec);
  const ClusteringResult r = lloyd(synth.data, farthest_first_init(synth.data, 3).centroids);
  const double recomputed = clustering_error(synth.data, r.centroids, r.labels);
  EXPECT_NEAR(r.error, recomputed, 1e-9 * recomputed);
  EXPECT_EQ(assign(synth.data, r.centroids), r.labels);
}

TEST(Lloyd, CentroidsAreClusterMeans) {
  SynthSpec spec;
  spec.clusters = 3;
  spec.dim = 2;
  spec.points_per_cluster = 40;
  spec.seed = 5;
  const SynthData synth = generate(spec);
  const ClusteringResult r = lloyd(synth.data, farthest_first_init(synth.data, 3).centroids);

  std::vector<double> mean(3 * 2, 0.0);
  std::vector<int> count(3, 0);
  for (std::size_t i = 0; i < synth.data.size(); ++i) {
    const auto x = synth.data.point(i);
    for (int j = 0; j < 2; ++j) mean[r.labels[i] * 2 + j] += x[j];
    ++count[r.labels[i]];
  }
  for (int c = 0; c < 3; ++c) {
    ASSERT_GT(count[c], 0);  // no empty cluster at convergence
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(r.centroids[c * 2 + j], mean[c * 2 + j] / count[c], 1e-9);
  }
}

TEST(Lloyd, RepairsEmptyClusters) {
  Dataset pts = line({0.0, 1.0, 2.0, 50.0});
  const std::vector<double> init = {0.0, 1.0, 1000.0};  // third seed attracts nothing
  const ClusteringResult r = lloyd(pts, init);

  std::vector<int> count(3, 0);
  for (int l : r.labels) ++count[l];
  for (int c = 0; c < 3; ++c) EXPECT_GT(count[c], 0);
  EXPECT_NEAR(r.error, 0.5, 1e-12);
  for (std::size_t t = 1; t < r.error_history.size(); ++t)
    EXPECT_LE(r.error_history[t], r.error_history[t - 1] * (1.0 + 1e-9));
}

TEST(FarthestFirst, SpecExamples) {
  Dataset pts(2, {0, 0, 1, 0, 10, 0});
  const FarthestFirstInit two = farthest_first_init(pts, 2);
  EXPECT_EQ(two.indices, (std::vector<std::size_t>{0, 2}));

  const FarthestFirstInit three = farthest_first_init(pts, 3);
  EXPECT_EQ(three.indices, (std::vector<std::size_t>{0, 2, 1}));

  EXPECT_THROW(farthest_first_init(pts, 4), std::invalid_argument);
}

TEST(FarthestFirst, PrefixStable) {
  SynthSpec spec;
  spec.clusters = 6;
  spec.dim = 2;
  spec.points_per_cluster = 60;
  spec.seed = 11;
  const SynthData synth = generate(spec);
  const FarthestFirstInit small = farthest_first_init(synth.data, 4);
  const FarthestFirstInit large = farthest_first_init(synth.data, 8);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(small.indices[i], large.indices[i]);
}

TEST(FarthestFirst, OneSeedPerIdealCluster) {
  SynthSpec spec;
  spec.clusters = 6;
  spec.dim = 2;
  spec.points_per_cluster = 100;
  spec.min_separation = 3.0;
  spec.seed = 13;
  const SynthData synth = generate(spec);
  const FarthestFirstInit init = farthest_first_init(synth.data, 6);

  std::vector<int> hits(6, 0);
  for (int s = 0; s < 6; ++s) {
    double best = 1e300;
    int arg = 0;
    for (int t = 0; t < 6; ++t) {
      const double d2 = squared_distance({init.centroids.data() + 2 * s, 2},
                                         {synth.truth_centroids.data() + 2 * t, 2});
      if (d2 < best) {
        best = d2;
        arg = t;
      }
    }
    ++hits[arg];
  }
  for (int t = 0; t < 6; ++t) EXPECT_EQ(hits[t], 1);
}

TEST(Sweep, SingleKIsTotalVariance) {
  Dataset pts(1, {1.0, 2.0, 3.0, 10.0});
  const SweepResult s = sweep(pts, 1, 1);
  ASSERT_EQ(s.results.size(), 1u);
  EXPECT_NEAR(s.results[0].error, 50.0, 1e-12);  // variance about the mean of 4
}

TEST(Sweep, ErrorsNonIncreasingOnIdealData) {
  SynthSpec spec;
  spec.clusters = 5;
  spec.dim = 2;
  spec.points_per_cluster = 100;
  spec.min_separation = 3.0;
  spec.seed = 17;
  const SynthData synth = generate(spec);
  const SweepResult s = sweep(synth.data, 2, 9);
  EXPECT_TRUE(s.warnings.empty());
  for (std::size_t i = 1; i < s.results.size(); ++i)
    EXPECT_LE(s.results[i].error, s.results[i - 1].error * (1.0 + 1e-9));
}

TEST(Sweep, MergeAndSplitStructureAroundTrueK) {
  SynthSpec spec;
  spec.clusters = 7;
  spec.dim = 2;
  spec.points_per_cluster = 150;
  spec.min_separation = 3.0;
  spec.placement_box = 14.0;
  spec.seed = 23;
  const SynthData synth = generate(spec);
  const SweepResult s = sweep(synth.data, 6, 8);
  const double R = spec.radius;

  // k = K+1: exactly one true cluster holds two fitted centroids.
  {
    const ClusteringResult& r = s.results[2];
    std::vector<int> inside(7, 0);
    for (int j = 0; j < 8; ++j)
      for (int t = 0; t < 7; ++t)
        if (squared_distance(r.centroid(j), {synth.truth_centroids.data() + 2 * t, 2}) <
            R * R)
          ++inside[t];
    int doubles = 0, singles = 0;
    for (int t = 0; t < 7; ++t) {
      if (inside[t] == 2) ++doubles;
      if (inside[t] == 1) ++singles;
    }
    EXPECT_EQ(doubles, 1);
    EXPECT_EQ(singles, 6);
  }

  // k = K-1: exactly two true clusters lost their own centroid (the pair
  // merged into a dumbbell whose centroid sits between them).
  {
    const ClusteringResult& r = s.results[0];
    int orphans = 0;
    for (int t = 0; t < 7; ++t) {
      double best = 1e300;
      for (int j = 0; j < 6; ++j)
        best = std::min(best,
                        squared_distance(r.centroid(j),
                                         {synth.truth_centroids.data() + 2 * t, 2}));
      if (best > R * R) ++orphans;
    }
    EXPECT_EQ(orphans, 2);
  }
}

TEST(Sweep, DeterministicAcrossRunsAndThreadCounts) {
  SynthSpec spec;
  spec.clusters = 4;
  spec.dim = 3;
  spec.points_per_cluster = 60;
  spec.seed = 29;
  const SynthData synth = generate(spec);

  SweepParams one;
  one.threads = 1;
  SweepParams four;
  four.threads = 4;
  const SweepResult a = sweep(synth.data, 2, 6, one);
  const SweepResult b = sweep(synth.data, 2, 6, one);
  const SweepResult c = sweep(synth.data, 2, 6, four);
  ASSERT_EQ(a.results.size(), c.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].labels, b.results[i].labels);
    EXPECT_EQ(a.results[i].centroids, b.results[i].centroids);
    EXPECT_EQ(a.results[i].labels, c.results[i].labels);
    EXPECT_EQ(a.results[i].centroids, c.results[i].centroids);
    EXPECT_EQ(a.results[i].error, c.results[i].error);
  }
}

TEST(Sweep, RejectsBadRange) {
  Dataset pts = line({0.0, 1.0});
  EXPECT_THROW(sweep(pts, 0, 1), std::invalid_argument);
  EXPECT_THROW(sweep(pts, 2, 1), std::invalid_argument);
  EXPECT_THROW(sweep(pts, 1, 3), std::invalid_argument);
}

}  // namespace
}  // namespace pkmeans
