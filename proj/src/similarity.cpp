#include "scimap/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "scimap/error.hpp"

namespace scimap {

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<SimilarityEntry> entries) : n_(n) {
  entries_.reserve(entries.size());
  for (auto e : entries) {
    if (e.a == e.b || e.a >= n || e.b >= n) {
      throw Error(ErrorKind::InvalidArgument, "similarity entry has invalid indices");
    }
    if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
      throw Error(ErrorKind::InvalidArgument, "similarity values must be finite and >= 0");
    }
    if (e.value == 0.0) continue;
    if (e.a > e.b) std::swap(e.a, e.b);
    entries_.push_back(e);
  }
  std::sort(entries_.begin(), entries_.end(), [](const auto& x, const auto& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].a == entries_[k - 1].a && entries_[k].b == entries_[k - 1].b) {
      throw Error(ErrorKind::InvalidArgument, "repeated similarity pair");
    }
  }
}

double SimilarityMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair(i, j),
                                   [](const SimilarityEntry& e, const std::pair<std::size_t, std::size_t>& key) {
                                     return std::pair(e.a, e.b) < key;
                                   });
  if (it == entries_.end() || it->a != i || it->b != j) return 0.0;
  return it->value;
}

double SimilarityMatrix::max_value() const {
  double best = 0.0;
  for (const auto& e : entries_) best = std::max(best, e.value);
  return best;
}

std::vector<std::vector<std::pair<std::size_t, double>>> SimilarityMatrix::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n_);
  for (const auto& e : entries_) {
    adj[e.a].emplace_back(e.b, e.value);
    adj[e.b].emplace_back(e.a, e.value);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

SimilarityMatrix SimilarityMatrix::scaled(double factor) const {
  auto entries = entries_;
  for (auto& e : entries) e.value *= factor;
  return SimilarityMatrix(n_, std::move(entries));
}

SimilarityMatrix association_strength(const CooccurrenceNetwork& net) {
  const auto m = net.total_weight();
  if (m <= 0) {
    throw Error(ErrorKind::DegenerateNetwork, "network has no edges (m = 0)");
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net.strength(i) <= 0) {
      throw Error(ErrorKind::DegenerateNetwork,
                  "node '" + net.nodes()[i].label + "' has zero total link strength");
    }
  }
  std::vector<SimilarityEntry> entries;
  entries.reserve(net.edges().size());
  const double two_m = 2.0 * static_cast<double>(m);
  for (const auto& e : net.edges()) {
    const double wi = static_cast<double>(net.strength(e.a));
    const double wj = static_cast<double>(net.strength(e.b));
    entries.push_back({e.a, e.b, two_m * static_cast<double>(e.weight) / (wi * wj)});
  }
  return SimilarityMatrix(net.size(), std::move(entries));
}

void write_similarity_tsv(std::ostream& out, const SimilarityMatrix& sims) {
  char buf[32];
  for (const auto& e : sims.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << (e.a + 1) << '\t' << (e.b + 1) << '\t' << buf << '\n';
  }
}

}  // namespace scimap
