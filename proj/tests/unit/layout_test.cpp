#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "../support.hpp"
#include "scimap/error.hpp"
#include "scimap/layout.hpp"

namespace scimap {
namespace {

using testing_support::random_similarities;
using testing_support::to_sparse;

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

TEST(Stress, SmallCasesAndOracle) {
  const SimilarityMatrix two(2, {{0, 1, 2.0}});
  EXPECT_EQ(stress(std::vector<Point>{{0, 0}, {1, 0}}, two), 2.0);
  EXPECT_EQ(stress(std::vector<Point>{{3, 3}, {3, 3}}, two), 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto dense = random_similarities(rng, 20, 0.3, false);
  std::vector<Point> pts(20);
  std::vector<oracle::XY> xy;
  for (auto& p : pts) {
    p = {u(rng), u(rng)};
    xy.push_back({p.x, p.y});
  }
  const double expected = oracle::stress(xy, dense);
  EXPECT_NEAR(stress(pts, to_sparse(dense)), expected, 1e-12 * expected);
  EXPECT_NEAR(mean_pairwise_distance(pts), oracle::mean_distance(xy), 1e-12);
}

TEST(Layout, TwoCliquesAreSeparated) {
  const auto dense = testing_support::two_cliques(5, 1.0, 0.05);
  const auto layout = optimize_layout(to_sparse(dense));
  const auto theirs = oracle::generic_constrained_layout(dense, 7);
  auto separated = [](auto&& d) {
    double max_inside = 0.0;
    double min_across = 1e300;
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = i + 1; j < 10; ++j) {
        if ((i < 5) == (j < 5)) {
          max_inside = std::max(max_inside, d(i, j));
        } else {
          min_across = std::min(min_across, d(i, j));
        }
      }
    }
    return max_inside < min_across;
  };
  EXPECT_TRUE(separated([&](std::size_t i, std::size_t j) { return dist(layout.positions[i], layout.positions[j]); }));
  EXPECT_TRUE(separated([&](std::size_t i, std::size_t j) { return oracle::dist(theirs[i], theirs[j]); }));
}

TEST(Layout, RestartDominance) {
  std::mt19937_64 rng(13);
  const auto layout = optimize_layout(to_sparse(random_similarities(rng, 15, 0.2, true)));
  ASSERT_EQ(layout.restarts.size(), 10u);
  for (const auto& r : layout.restarts) EXPECT_LE(layout.stress, r.stress * (1 + 1e-12));
}

TEST(Layout, TwoNodesAtUnitDistance) {
  const auto layout = optimize_layout(SimilarityMatrix(2, {{0, 1, 3.0}}));
  EXPECT_NEAR(dist(layout.positions[0], layout.positions[1]), 1.0, 1e-15);
  EXPECT_NEAR(layout.positions[0].y, 0.0, 1e-15);
}

TEST(Layout, SymmetricTriangleIsEquilateral) {
  const auto layout = optimize_layout(SimilarityMatrix(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}));
  const auto& p = layout.positions;
  EXPECT_NEAR(dist(p[0], p[1]), 1.0, 1e-6);
  EXPECT_NEAR(dist(p[0], p[2]), 1.0, 1e-6);
  EXPECT_NEAR(dist(p[1], p[2]), 1.0, 1e-6);
}

TEST(Layout, UnitMeanDistanceOnRandomNetworks) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(2, 30);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = to_sparse(random_similarities(rng, size(rng), 0.2, true));
    LayoutConfig config;
    config.restarts = 3;
    const auto layout = optimize_layout(s, config);
    EXPECT_NEAR(mean_pairwise_distance(layout.positions), 1.0, 1e-9);
    EXPECT_NEAR(layout.stress, stress(layout.positions, s), 1e-12 * std::max(1.0, layout.stress));
  }
}

// The majorizer should reach at least the stress of an unrelated generic
// optimiser of the same constrained problem.
TEST(Layout, NoWorseThanGenericOptimiser) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto dense = random_similarities(rng, 6, 0.5, true);
    const auto ours = optimize_layout(to_sparse(dense));
    const auto theirs = oracle::generic_constrained_layout(dense, 100 + trial);
    EXPECT_LE(ours.stress, oracle::stress(theirs, dense) * (1.0 + 1e-4)) << trial;
  }
}

TEST(Layout, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    LayoutConfig config;
    config.seed = static_cast<std::uint64_t>(trial);
    config.record_log = true;
    const auto layout = optimize_layout(to_sparse(random_similarities(rng, 25, 0.15, true)), config);
    ASSERT_FALSE(layout.log.empty());
    for (std::size_t k = 1; k < layout.log.size(); ++k) {
      if (layout.log[k].restart != layout.log[k - 1].restart) continue;
      EXPECT_LE(layout.log[k].objective, layout.log[k - 1].objective);
    }
  }
}

TEST(Layout, DeterministicForFixedSeed) {
  std::mt19937_64 rng(29);
  const auto s = to_sparse(random_similarities(rng, 20, 0.2, true));
  const auto a = optimize_layout(s);
  const auto b = optimize_layout(s);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Layout, ScaleInvariantUnderSimilarityScaling) {
  std::mt19937_64 rng(31);
  const auto s = to_sparse(random_similarities(rng, 12, 0.3, true));
  const auto a = optimize_layout(s);
  const auto b = optimize_layout(s.scaled(4.0));
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    EXPECT_NEAR(a.positions[i].x, b.positions[i].x, 1e-6);
    EXPECT_NEAR(a.positions[i].y, b.positions[i].y, 1e-6);
  }
}

TEST(Layout, Errors) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind_of([] { optimize_layout(SimilarityMatrix(1, {})); }), ErrorKind::TooFewNodes);
  EXPECT_EQ(kind_of([] { optimize_layout(SimilarityMatrix(3, {})); }), ErrorKind::DegenerateSimilarity);
  EXPECT_EQ(kind_of([] { optimize_layout(SimilarityMatrix(4, {{0, 1, 1.0}, {2, 3, 1.0}})); }),
            ErrorKind::DisconnectedSimilarity);
  EXPECT_EQ(kind_of([] { mean_pairwise_distance(std::vector<Point>{{0, 0}}); }), ErrorKind::TooFewNodes);
}

TEST(CanonicalTransform, PropertiesOnRandomClouds) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(2, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    std::vector<Point> pts(n);
    const double sx = 0.2 + std::abs(g(rng));
    for (auto& p : pts) p = {3.0 + sx * g(rng), -2.0 + g(rng)};
    const auto out = canonical_transform(pts);
    double cx = 0, cy = 0, vx = 0, vy = 0;
    for (const auto& p : out) {
      cx += p.x;
      cy += p.y;
      vx += p.x * p.x;
      vy += p.y * p.y;
    }
    EXPECT_LT(std::hypot(cx / n, cy / n), 1e-12);
    EXPECT_GE(vx, vy);
    std::vector<double> xs, ys;
    for (const auto& p : out) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    auto med = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    EXPECT_LE(med(xs), 0.0);
    EXPECT_LE(med(ys), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        EXPECT_NEAR(dist(out[i], out[j]), dist(pts[i], pts[j]), 1e-12);
      }
    }
  }
}

TEST(IterationLog, CsvFormat) {
  std::ostringstream out;
  write_iteration_log(out, {{0, 0, -1.5}, {0, 1, -2.0}});
  EXPECT_EQ(out.str(), "restart,iteration,objective\n0,0,-1.5\n0,1,-2\n");
}

TEST(CanonicalTransform, SinglePointGoesToOrigin) {
  const auto out = canonical_transform(std::vector<Point>{{4.5, -2.0}});
  EXPECT_EQ(out[0], (Point{0.0, 0.0}));
}

TEST(CanonicalTransform, PositiveMedianIsReflected) {
  // Centred, already axis-aligned, median x = 1 > 0.
  const std::vector<Point> pts = {{-3.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const auto out = canonical_transform(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_DOUBLE_EQ(out[i].x, -pts[i].x);
    EXPECT_NEAR(out[i].y, 0.0, 1e-15);
  }
}

}  // namespace
}  // namespace scimap
