#include "pkmeans/outliers.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "pkmeans/rng.hpp"
#include "pkmeans/synth.hpp"

namespace pkmeans {
namespace {

TEST(DensityFilter, RemovesBackgroundNoiseKeepsCluster) {
  SynthSpec spec;
  spec.clusters = 1;
  spec.dim = 3;
  spec.points_per_cluster = 5000;
  spec.noise_points = 50;
  spec.placement_box = 20.0;
  spec.seed = 3;
  const SynthData s = generate(spec);

  DensityFilterConfig cfg;
  cfg.min_neighbors = 5;  // auto radius
  const DensityFilterResult res = density_filter(s.data, cfg);

  int noise_removed = 0, cluster_removed = 0;
  for (std::size_t idx : res.removed_indices) {
    if (s.truth_labels[idx] == -1)
      ++noise_removed;
    else
      ++cluster_removed;
  }
  EXPECT_GE(noise_removed, 45);           // >= 90% of the 50 background points
  EXPECT_LE(cluster_removed, 50);         // <= 1% of the 5000 cluster points
  EXPECT_EQ(res.kept.size() + res.removed_indices.size(), s.data.size());
}

TEST(DensityFilter, HugeRadiusRemovesNothing) {
  const Dataset pts(1, {0.0, 1.0, 50.0, 51.0});
  DensityFilterConfig cfg;
  cfg.radius = 1e9;
  cfg.min_neighbors = 1;
  const DensityFilterResult res = density_filter(pts, cfg);
  EXPECT_TRUE(res.removed_indices.empty());
  EXPECT_EQ(res.kept.size(), 4u);
}

TEST(DensityFilter, TwoIdenticalPointsSurvive) {
  const Dataset pts(2, {1.0, 2.0, 1.0, 2.0});
  DensityFilterConfig cfg;
  cfg.min_neighbors = 1;  // auto radius degenerates to 0; coincident still count
  const DensityFilterResult res = density_filter(pts, cfg);
  EXPECT_TRUE(res.removed_indices.empty());
}

TEST(DensityFilter, AllIdenticalWarnsAndKeepsEverything) {
  const Dataset pts(1, {3.0, 3.0, 3.0, 3.0});
  DensityFilterConfig cfg;
  cfg.min_neighbors = 10;  // would remove everything if applied blindly
  const DensityFilterResult res = density_filter(pts, cfg);
  EXPECT_TRUE(res.removed_indices.empty());
  EXPECT_EQ(res.kept.size(), 4u);
  ASSERT_FALSE(res.warnings.empty());
}

TEST(DensityFilter, OutputOrderPreserved) {
  SynthSpec spec;
  spec.clusters = 1;
  spec.dim = 2;
  spec.points_per_cluster = 300;
  spec.noise_points = 10;
  spec.placement_box = 30.0;
  spec.seed = 5;
  const SynthData s = generate(spec);
  DensityFilterConfig cfg;
  cfg.min_neighbors = 3;
  const DensityFilterResult res = density_filter(s.data, cfg);

  std::vector<std::size_t> kept_src;
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    if (r < res.removed_indices.size() && res.removed_indices[r] == i) {
      ++r;
      continue;
    }
    kept_src.push_back(i);
  }
  ASSERT_EQ(kept_src.size(), res.kept.size());
  for (std::size_t i = 0; i < kept_src.size(); ++i)
    EXPECT_EQ(std::vector<double>(res.kept.point(i).begin(), res.kept.point(i).end()),
              std::vector<double>(s.data.point(kept_src[i]).begin(),
                                  s.data.point(kept_src[i]).end()));
  EXPECT_TRUE(std::is_sorted(res.removed_indices.begin(), res.removed_indices.end()));
}

TEST(DensityFilter, PermutationEquivariant) {
  SynthSpec spec;
  spec.clusters = 2;
  spec.dim = 2;
  spec.points_per_cluster = 100;
  spec.noise_points = 8;
  spec.placement_box = 25.0;
  spec.seed = 9;
  const SynthData s = generate(spec);
  const std::size_t n = s.data.size();

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(123);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.next_u64() % i]);

  std::vector<double> shuffled;
  shuffled.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = s.data.point(perm[i]);
    shuffled.insert(shuffled.end(), x.begin(), x.end());
  }
  const Dataset permuted(2, std::move(shuffled));

  DensityFilterConfig cfg;
  cfg.min_neighbors = 4;
  const DensityFilterResult base = density_filter(s.data, cfg);
  const DensityFilterResult perm_res = density_filter(permuted, cfg);

  std::vector<std::size_t> mapped;
  for (std::size_t i = 0; i < n; ++i) {
    const bool removed_perm =
        std::binary_search(perm_res.removed_indices.begin(),
                           perm_res.removed_indices.end(), i);
    if (removed_perm) mapped.push_back(perm[i]);
  }
  std::sort(mapped.begin(), mapped.end());
  EXPECT_EQ(mapped, base.removed_indices);
}

TEST(DensityFilter, RejectsTinyInput) {
  const Dataset one(1, {0.0});
  DensityFilterConfig cfg;
  EXPECT_THROW(density_filter(one, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace pkmeans
