// Independent reference evaluators used only by the tests. They work on
// dense matrices and plain loops and share no code with the library's
// sparse implementations.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using XY = std::pair<double, double>;

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<double>(n, 0.0)); }

/// Association strength from a dense co-occurrence count matrix.
inline Matrix association_strength(const Matrix& c) {
  const std::size_t n = c.size();
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i] += c[i][j];
    total += w[i];
  }
  const double m = total / 2.0;
  Matrix s = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && c[i][j] != 0.0) s[i][j] = 2.0 * m * c[i][j] / (w[i] * w[j]);
    }
  }
  return s;
}

inline double dist(const XY& p, const XY& q) {
  return std::sqrt((p.first - q.first) * (p.first - q.first) +
                   (p.second - q.second) * (p.second - q.second));
}

inline double stress(const std::vector<XY>& x, const Matrix& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) total += s[i][j] * dist(x[i], x[j]) * dist(x[i], x[j]);
  }
  return total;
}

inline double mean_distance(const std::vector<XY>& x) {
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      total += dist(x[i], x[j]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

/// sum_{i<j} [c_i == c_j] (s_ij - gamma), straight from the definition.
inline double quality(const std::vector<int>& c, const Matrix& s, double gamma) {
  double q = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) q += s[i][j] - gamma;
    }
  }
  return q;
}

/// Visits every set partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(n, 0);
  std::vector<int> mx(n, 0);  // max of a[0..i-1]
  if (n == 0) {
    f(a);
    return;
  }
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_so_far) {
    if (i == n) {
      f(a);
      return;
    }
    for (int v = 0; v <= max_so_far + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(max_so_far, v));
    }
  };
  a[0] = 0;
  rec(1, 0);
}

inline double exhaustive_best_quality(const Matrix& s, double gamma) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_partition(s.size(), [&](const std::vector<int>& p) { best = std::max(best, quality(p, s, gamma)); });
  return best;
}

/// Gaussian kernel sum at one point.
inline double density_at(double x, double y, const std::vector<XY>& pts, const std::vector<double>& w,
                         double h) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d2 = (x - pts[i].first) * (x - pts[i].first) + (y - pts[i].second) * (y - pts[i].second);
    total += w[i] * std::exp(-d2 / (2.0 * h * h));
  }
  return total;
}

/// Minimises stress / mean_distance^2 (scale-free form of the constrained
/// layout problem) by finite-difference gradient descent with backtracking,
/// then rescales to unit mean distance.
inline std::vector<XY> generic_constrained_layout(const Matrix& s, std::uint64_t seed, int iterations = 4000) {
  const std::size_t n = s.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(2 * n);
  for (auto& x : v) x = u(rng);
  auto unpack = [&](const std::vector<double>& z) {
    std::vector<XY> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {z[2 * i], z[2 * i + 1]};
    return pts;
  };
  auto f = [&](const std::vector<double>& z) {
    const auto pts = unpack(z);
    const double md = mean_distance(pts);
    return stress(pts, s) / (md * md);
  };
  double step = 0.1;
  double fv = f(v);
  std::vector<double> g(2 * n);
  for (int it = 0; it < iterations; ++it) {
    const double eps = 1e-7;
    for (std::size_t k = 0; k < v.size(); ++k) {
      auto up = v;
      auto dn = v;
      up[k] += eps;
      dn[k] -= eps;
      g[k] = (f(up) - f(dn)) / (2 * eps);
    }
    for (;;) {
      auto trial = v;
      for (std::size_t k = 0; k < v.size(); ++k) trial[k] -= step * g[k];
      const double ft = f(trial);
      if (ft < fv) {
        v = trial;
        fv = ft;
        step *= 1.5;
        break;
      }
      step *= 0.5;
      if (step < 1e-14) break;
    }
    if (step < 1e-14) break;
  }
  auto pts = unpack(v);
  const double md = mean_distance(pts);
  for (auto& p : pts) {
    p.first /= md;
    p.second /= md;
  }
  return pts;
}

}  // namespace oracle
