#include "scimap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "scimap/error.hpp"
#include "scimap/random.hpp"

namespace scimap {

namespace {

double distance(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

bool is_connected(const SimilarityMatrix& sims) {
  const auto adj = sims.adjacency();
  std::vector<bool> seen(sims.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& [u, _] : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == sims.size();
}

std::vector<Point> rescale_to_unit_mean(std::span<const Point> positions) {
  const double mean = mean_pairwise_distance(positions);
  std::vector<Point> out(positions.begin(), positions.end());
  for (auto& p : out) {
    p.x /= mean;
    p.y /= mean;
  }
  return out;
}

struct RunResult {
  std::vector<Point> positions;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

// One majorization run. Each update minimises the quadratic majorizer
//   tr(X' L X) - tr(X' B(Y) Y),
// L the Laplacian of s and B(Y) the Laplacian of 1/d_ij(Y), giving
// X = 1/2 L^+ B(Y) Y. The objective can therefore never increase in exact
// arithmetic; a rounding-level increase ends the run without accepting the step.
RunResult run_majorization(const SimilarityMatrix& sims, const Eigen::LLT<Eigen::MatrixXd>& solver,
                           std::vector<Point> start, const LayoutConfig& config, int restart,
                           std::vector<IterationRecord>* log) {
  const std::size_t n = sims.size();
  RunResult run;
  run.positions = std::move(start);
  run.objective = unconstrained_objective(run.positions, sims);
  if (log) log->push_back({restart, 0, run.objective});

  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(n), 2);
  std::vector<Point> next(n);
  for (int it = 1; it <= config.max_iterations; ++it) {
    rhs.setZero();
    const auto& y = run.positions;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = distance(y[i], y[j]);
        if (d <= 0.0) continue;
        const double w = 1.0 / d;
        const double dx = w * (y[i].x - y[j].x);
        const double dy = w * (y[i].y - y[j].y);
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        rhs(ii, 0) += dx;
        rhs(ii, 1) += dy;
        rhs(jj, 0) -= dx;
        rhs(jj, 1) -= dy;
      }
    }
    const Eigen::MatrixXd x = 0.5 * solver.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = {x(static_cast<Eigen::Index>(i), 0), x(static_cast<Eigen::Index>(i), 1)};
    }
    const double objective = unconstrained_objective(next, sims);
    if (!(objective <= run.objective)) {
      // Only rounding can cause this, so the current point is a fixed point.
      run.converged = std::abs(objective - run.objective) <=
                      1e-12 * std::abs(run.objective);
      break;
    }
    double step = 0.0;
    for (std::size_t i = 0; i < n; ++i) step = std::max(step, distance(next[i], y[i]));
    const double scale = mean_pairwise_distance(next);
    run.positions.swap(next);
    run.objective = objective;
    run.iterations = it;
    if (log) log->push_back({restart, it, objective});
    if (step <= config.rel_tolerance * scale) {
      run.converged = true;
      break;
    }
  }
  return run;
}

std::vector<Point> random_start(std::size_t n, std::uint64_t seed, int restart,
                                double jitter_epsilon) {
  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform() - 0.5;
    p.y = rng.uniform() - 0.5;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i] == pts[j]) {
        const double angle = 2.0 * M_PI * rng.uniform();
        pts[j].x += jitter_epsilon * std::cos(angle);
        pts[j].y += jitter_epsilon * std::sin(angle);
      }
    }
  }
  return pts;
}

}  // namespace

double stress(std::span<const Point> positions, const SimilarityMatrix& sims) {
  if (positions.size() != sims.size()) {
    throw Error(ErrorKind::InvalidArgument, "positions and similarity sizes differ");
  }
  double total = 0.0;
  for (const auto& e : sims.entries()) {
    const double dx = positions[e.a].x - positions[e.b].x;
    const double dy = positions[e.a].y - positions[e.b].y;
    total += e.value * (dx * dx + dy * dy);
  }
  return total;
}

double mean_pairwise_distance(std::span<const Point> positions) {
  const std::size_t n = positions.size();
  if (n < 2) {
    throw Error(ErrorKind::TooFewNodes, "mean pairwise distance needs at least 2 points");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) total += distance(positions[i], positions[j]);
  }
  return 2.0 * total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double unconstrained_objective(std::span<const Point> positions, const SimilarityMatrix& sims) {
  const std::size_t n = positions.size();
  double repulsion = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) repulsion += distance(positions[i], positions[j]);
  }
  return stress(positions, sims) - repulsion;
}

Layout optimize_layout(const SimilarityMatrix& sims, const LayoutConfig& config) {
  const std::size_t n = sims.size();
  if (n < 2) throw Error(ErrorKind::TooFewNodes, "layout needs at least 2 nodes");
  if (sims.entries().empty()) {
    throw Error(ErrorKind::DegenerateSimilarity, "all similarities are zero");
  }
  if (!is_connected(sims)) {
    throw Error(ErrorKind::DisconnectedSimilarity, "similarity graph is not connected");
  }
  if (config.restarts < 1 || config.max_iterations < 1 || !(config.rel_tolerance > 0.0) ||
      !(config.jitter_epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "layout configuration values must be positive");
  }

  // L + (1/n) 11' is positive definite for a connected graph and agrees with
  // L on the centred subspace the right-hand side lives in.
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd system = Eigen::MatrixXd::Constant(nn, nn, 1.0 / static_cast<double>(n));
  for (const auto& e : sims.entries()) {
    const auto a = static_cast<Eigen::Index>(e.a);
    const auto b = static_cast<Eigen::Index>(e.b);
    system(a, a) += e.value;
    system(b, b) += e.value;
    system(a, b) -= e.value;
    system(b, a) -= e.value;
  }
  const Eigen::LLT<Eigen::MatrixXd> solver(system);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DegenerateSimilarity, "similarity Laplacian is not factorizable");
  }

  Layout best;
  best.seed = config.seed;
  std::vector<Point> best_positions;
  for (int r = 0; r < config.restarts; ++r) {
    auto run = run_majorization(sims, solver, random_start(n, config.seed, r, config.jitter_epsilon),
                                config, r, config.record_log ? &best.log : nullptr);
    auto scaled = rescale_to_unit_mean(run.positions);
    const double run_stress = stress(scaled, sims);
    best.restarts.push_back({run_stress, run.objective, run.iterations, run.converged});
    if (r == 0 || run_stress < best.restarts[static_cast<std::size_t>(best.best_restart)].stress) {
      best.best_restart = r;
      best_positions = std::move(scaled);
    }
  }
  const auto& chosen = best.restarts[static_cast<std::size_t>(best.best_restart)];
  best.converged = chosen.converged;
  best.iterations = chosen.iterations;
  // Rescale once more after the rigid transform so the constraint holds to
  // rounding on the final coordinates.
  best.positions = rescale_to_unit_mean(canonical_transform(best_positions));
  best.stress = stress(best.positions, sims);
  return best;
}

std::vector<Point> canonical_transform(std::span<const Point> positions) {
  const std::size_t n = positions.size();
  std::vector<Point> out(positions.begin(), positions.end());
  if (n == 0) return out;

  double cx = 0.0;
  double cy = 0.0;
  for (const auto& p : out) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  for (auto& p : out) {
    p.x -= cx;
    p.y -= cy;
  }

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& p : out) {
    sxx += p.x * p.x;
    syy += p.y * p.y;
    sxy += p.x * p.y;
  }
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (auto& p : out) {
    const double x = c * p.x + s * p.y;
    const double y = -s * p.x + c * p.y;
    p = {x, y};
  }

  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = out[i].x;
    ys[i] = out[i].y;
  }
  const bool flip_x = median(xs) > 0.0;
  const bool flip_y = median(ys) > 0.0;
  for (auto& p : out) {
    if (flip_x) p.x = -p.x;
    if (flip_y) p.y = -p.y;
  }
  return out;
}

void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& log) {
  out << "restart,iteration,objective\n";
  char buf[40];
  for (const auto& rec : log) {
    std::snprintf(buf, sizeof buf, "%.17g", rec.objective);
    out << rec.restart << ',' << rec.iteration << ',' << buf << '\n';
  }
}

}  // namespace scimap
