#pragma once

#include <cstdint>
#include <vector>

#include "scimap/similarity.hpp"

namespace scimap {

struct ClusterAssignment {
  /// 1-based cluster id per node. Ids are numbered by descending cluster
  /// size, ties broken by the smallest node index in the cluster.
  std::vector<int> assignment;
  double quality = 0.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  std::vector<double> restart_qualities;

  int cluster_count() const;
};

/// sum over same-cluster pairs i < j of (s_ij - gamma). Pairs with zero
/// similarity in the same cluster contribute -gamma each.
double partition_quality(const std::vector<int>& assignment, const SimilarityMatrix& sims,
                         double gamma);

/// Largest improvement available from moving one node to another existing
/// cluster or to a new singleton; <= 0 for a local-move optimal partition.
double best_single_move_gain(const std::vector<int>& assignment, const SimilarityMatrix& sims,
                             double gamma);

/// Relabels to 1..K, ordered by descending size then smallest member index.
std::vector<int> renumber_clusters(const std::vector<int>& assignment);

/// Maximises partition_quality with smart local moving (local moving,
/// per-cluster subnetwork refinement, aggregation, recursion), repeated until
/// a full cycle leaves the partition unchanged. The best of `restarts`
/// seeded runs is returned; ties keep the lower restart index.
/// Throws Error{InvalidArgument} for gamma < 0 or restarts < 1.
ClusterAssignment cluster(const SimilarityMatrix& sims, double gamma = 1.0,
                          std::uint64_t seed = 42, int restarts = 10);

}  // namespace scimap
