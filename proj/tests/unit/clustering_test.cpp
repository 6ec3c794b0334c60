#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "../support.hpp"
#include "scimap/clustering.hpp"
#include "scimap/error.hpp"

namespace scimap {
namespace {

using testing_support::random_similarities;
using testing_support::to_sparse;
using testing_support::two_cliques;

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

TEST(PartitionQuality, MatchesDefinition) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> label(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dense = random_similarities(rng, 12, 0.3, false);
    std::vector<int> c(12);
    for (auto& x : c) x = label(rng);
    const double gamma = 0.25 * trial / 10.0;
    EXPECT_TRUE(close(partition_quality(c, to_sparse(dense), gamma), oracle::quality(c, dense, gamma)));
  }
}

TEST(Cluster, TwoCliquesSeparate) {
  const auto result = cluster(to_sparse(two_cliques(4, 2.0, 0.1)), 1.0);
  EXPECT_EQ(result.assignment, (std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2}));
  EXPECT_TRUE(close(result.quality, 2 * 6 * (2.0 - 1.0)));
}

TEST(Cluster, MatchesExhaustiveOptimumOnSmallNetworks) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> gamma(0.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto dense = random_similarities(rng, size(rng), 0.5, false);
    const double g = gamma(rng);
    const auto result = cluster(to_sparse(dense), g);
    EXPECT_TRUE(close(result.quality, oracle::exhaustive_best_quality(dense, g))) << trial;
    EXPECT_TRUE(close(result.quality, oracle::quality(result.assignment, dense, g)));
  }
}

TEST(Cluster, LargeResolutionGivesSingletons) {
  std::mt19937_64 rng(43);
  const auto s = to_sparse(random_similarities(rng, 15, 0.4, true));
  const auto result = cluster(s, s.max_value() * 1.0001);
  EXPECT_EQ(result.cluster_count(), 15);
  EXPECT_EQ(result.quality, 0.0);
}

TEST(Cluster, ZeroResolutionOnConnectedGivesOneCluster) {
  std::mt19937_64 rng(47);
  const auto dense = random_similarities(rng, 15, 0.2, true);
  const auto s = to_sparse(dense);
  const auto result = cluster(s, 0.0);
  EXPECT_EQ(result.cluster_count(), 1);
  double total = 0.0;
  for (const auto& e : s.entries()) total += e.value;
  EXPECT_TRUE(close(result.quality, total));
}

TEST(Cluster, LocallyOptimalOnLargerNetworks) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    const auto s = to_sparse(random_similarities(rng, 100, 0.05, true));
    const auto result = cluster(s, 0.5, 42, 3);
    EXPECT_LE(best_single_move_gain(result.assignment, s, 0.5), 1e-12);
  }
}

TEST(Cluster, DeterministicAndRenumbered) {
  std::mt19937_64 rng(59);
  const auto s = to_sparse(random_similarities(rng, 40, 0.1, true));
  const auto a = cluster(s, 0.8);
  const auto b = cluster(s, 0.8);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.assignment, renumber_clusters(a.assignment));
  EXPECT_EQ(a.restart_qualities.size(), 10u);
}

TEST(RenumberClusters, SizeThenSmallestMember) {
  EXPECT_EQ(renumber_clusters({7, 3, 3, 7, 9}), (std::vector<int>{1, 2, 2, 1, 3}));
  EXPECT_EQ(renumber_clusters({5, 5, 2, 2, 2}), (std::vector<int>{2, 2, 1, 1, 1}));
}

TEST(Cluster, Errors) {
  const SimilarityMatrix s(2, {{0, 1, 1.0}});
  EXPECT_THROW(cluster(s, -1.0), Error);
  EXPECT_THROW(cluster(s, 1.0, 42, 0), Error);
}

TEST(PartitionQuality, SmallCases) {
  const SimilarityMatrix two(2, {{0, 1, 2.0}});
  EXPECT_EQ(partition_quality({1, 2}, two, 0.5), 0.0);
  EXPECT_EQ(partition_quality({1, 1}, two, 0.5), 1.5);
}

TEST(Cluster, TwoFourCliquesMatchExhaustiveSearch) {
  const auto dense = two_cliques(4, 1.0, 0.1);
  const auto result = cluster(to_sparse(dense), 0.3);
  EXPECT_EQ(result.assignment, (std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2}));
  EXPECT_EQ(oracle::quality(result.assignment, dense, 0.3), oracle::exhaustive_best_quality(dense, 0.3));
}

}  // namespace
}  // namespace scimap
