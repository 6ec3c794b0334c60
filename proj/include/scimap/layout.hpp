#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "scimap/similarity.hpp"

namespace scimap {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct LayoutConfig {
  std::uint64_t seed = 42;
  int restarts = 10;
  int max_iterations = 1000;
  double rel_tolerance = 1e-6;  // stop once no point moves more than this x mean distance
  double jitter_epsilon = 1e-9;
  bool record_log = false;  // keep every (restart, iteration, objective)
};

struct IterationRecord {
  int restart = 0;
  int iteration = 0;  // 0 is the starting configuration
  double objective = 0.0;  // unconstrained objective
};

struct RestartSummary {
  double stress = 0.0;  // Eq.-4 value after rescaling to unit mean distance
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct Layout {
  std::vector<Point> positions;
  double stress = 0.0;
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  std::vector<RestartSummary> restarts;
  std::vector<IterationRecord> log;
};

/// sum_{i<j} s_ij ||x_i - x_j||^2
double stress(std::span<const Point> positions, const SimilarityMatrix& sims);

/// (2 / (n (n - 1))) sum_{i<j} ||x_i - x_j||. Throws Error{TooFewNodes} for n < 2.
double mean_pairwise_distance(std::span<const Point> positions);

/// Unconstrained objective sum_{i<j} s_ij d_ij^2 - sum_{i<j} d_ij whose
/// minimiser, rescaled to unit mean distance, minimises the stress under the
/// unit-mean-distance constraint.
double unconstrained_objective(std::span<const Point> positions, const SimilarityMatrix& sims);

/// Minimises the unconstrained objective by majorization from `restarts`
/// seeded random starts, keeps the lowest-stress run, rescales it to unit
/// mean pairwise distance and applies canonical_transform.
/// Throws Error{TooFewNodes}, Error{DegenerateSimilarity} (all s_ij = 0) or
/// Error{DisconnectedSimilarity}.
Layout optimize_layout(const SimilarityMatrix& sims, const LayoutConfig& config = {});

/// Centre on the origin, rotate the first principal axis onto x, then flip
/// each axis whose median coordinate is positive.
std::vector<Point> canonical_transform(std::span<const Point> positions);

/// CSV "restart,iteration,objective".
void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& log);

}  // namespace scimap
