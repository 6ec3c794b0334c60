#include "scimap/clustering.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "scimap/error.hpp"
#include "scimap/random.hpp"

namespace scimap {

namespace {

constexpr double kMinGain = 1e-12;

// One level of the aggregation hierarchy. Node sizes count original nodes;
// weights between aggregated nodes are summed similarities. Weights inside
// an aggregated node are constant for every move at this level and omitted.
struct Level {
  std::vector<double> size;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;

  std::size_t n() const { return size.size(); }
};

// Relabels in order of first appearance; returns the cluster count.
std::size_t compact(std::vector<std::size_t>& labels) {
  std::vector<std::size_t> remap(labels.size(), SIZE_MAX);
  std::size_t next = 0;
  for (auto& l : labels) {
    if (remap[l] == SIZE_MAX) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

// Passes over all nodes in a fresh random order until one pass moves nothing.
// A node moves only when that raises the quality by more than kMinGain; among
// equally good targets the lowest cluster id wins.
bool local_moving(const Level& g, std::vector<std::size_t>& cluster, double gamma,
                  SplitMix64& rng) {
  const std::size_t n = g.n();
  std::vector<double> cluster_size(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    cluster_size[cluster[v]] += g.size[v];
    ++members[cluster[v]];
  }
  std::set<std::size_t> empty;
  for (std::size_t c = 0; c < n; ++c) {
    if (members[c] == 0) empty.insert(c);
  }

  std::vector<double> weight_to(n, 0.0);
  std::vector<std::size_t> touched;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  bool changed_any = false;
  for (;;) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    bool moved = false;
    for (const auto v : order) {
      const std::size_t current = cluster[v];
      touched.clear();
      for (const auto& [u, w] : g.adj[v]) {
        const auto c = cluster[u];
        if (weight_to[c] == 0.0) touched.push_back(c);
        weight_to[c] += w;
      }
      const double sv = g.size[v];
      auto score = [&](std::size_t c) {
        const double others = c == current ? cluster_size[c] - sv : cluster_size[c];
        return weight_to[c] - gamma * sv * others;
      };
      const double stay = score(current);
      std::size_t best = current;
      double best_score = stay;
      auto consider = [&](std::size_t c, double s) {
        if (s > best_score || (s == best_score && c < best)) {
          best = c;
          best_score = s;
        }
      };
      for (const auto c : touched) {
        if (c != current) consider(c, score(c));
      }
      if (members[current] > 1 && !empty.empty()) consider(*empty.begin(), 0.0);
      for (const auto c : touched) weight_to[c] = 0.0;

      if (best != current && best_score > stay + kMinGain) {
        cluster_size[current] -= sv;
        if (--members[current] == 0) empty.insert(current);
        cluster_size[best] += sv;
        if (members[best]++ == 0) empty.erase(best);
        cluster[v] = best;
        moved = true;
        changed_any = true;
      }
    }
    if (!moved) return changed_any;
  }
}

Level aggregate(const Level& g, const std::vector<std::size_t>& labels, std::size_t count) {
  Level out;
  out.size.assign(count, 0.0);
  out.adj.resize(count);
  std::vector<std::map<std::size_t, double>> sparse(count);
  for (std::size_t v = 0; v < g.n(); ++v) {
    out.size[labels[v]] += g.size[v];
    for (const auto& [u, w] : g.adj[v]) {
      if (labels[u] != labels[v]) sparse[labels[v]][labels[u]] += w;
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    out.adj[c].assign(sparse[c].begin(), sparse[c].end());
  }
  return out;
}

Level induced(const Level& g, const std::vector<std::size_t>& nodes,
              std::vector<std::size_t>& local_index) {
  Level out;
  out.size.reserve(nodes.size());
  out.adj.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    local_index[nodes[k]] = k;
    out.size.push_back(g.size[nodes[k]]);
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (const auto& [u, w] : g.adj[nodes[k]]) {
      if (local_index[u] != SIZE_MAX) out.adj[k].emplace_back(local_index[u], w);
    }
  }
  for (const auto v : nodes) local_index[v] = SIZE_MAX;
  return out;
}

std::vector<std::size_t> smart_local_moving(const Level& g, std::vector<std::size_t> partition,
                                            double gamma, SplitMix64& rng) {
  const std::size_t n = g.n();
  local_moving(g, partition, gamma, rng);
  const std::size_t k = compact(partition);
  if (k == n) return partition;

  // Refine every cluster by local moving inside its own subnetwork.
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t v = 0; v < n; ++v) groups[partition[v]].push_back(v);
  std::vector<std::size_t> refined(n, 0);
  std::vector<std::size_t> local_index(n, SIZE_MAX);
  std::size_t refined_count = 0;
  for (const auto& group : groups) {
    if (group.size() == 1) {
      refined[group[0]] = refined_count++;
      continue;
    }
    const Level sub = induced(g, group, local_index);
    std::vector<std::size_t> sub_partition(group.size());
    std::iota(sub_partition.begin(), sub_partition.end(), 0);
    local_moving(sub, sub_partition, gamma, rng);
    const std::size_t sub_count = compact(sub_partition);
    for (std::size_t j = 0; j < group.size(); ++j) {
      refined[group[j]] = refined_count + sub_partition[j];
    }
    refined_count += sub_count;
  }

  std::vector<std::size_t> result(n);
  if (refined_count < n) {
    const Level agg = aggregate(g, refined, refined_count);
    std::vector<std::size_t> start(refined_count);
    for (std::size_t v = 0; v < n; ++v) start[refined[v]] = partition[v];
    const auto sub = smart_local_moving(agg, std::move(start), gamma, rng);
    for (std::size_t v = 0; v < n; ++v) result[v] = sub[refined[v]];
  } else {
    // Refinement split everything into singletons; aggregate by the clusters.
    const Level agg = aggregate(g, partition, k);
    std::vector<std::size_t> start(k);
    std::iota(start.begin(), start.end(), 0);
    const auto sub = smart_local_moving(agg, std::move(start), gamma, rng);
    for (std::size_t v = 0; v < n; ++v) result[v] = sub[partition[v]];
  }
  compact(result);
  return result;
}

}  // namespace

int ClusterAssignment::cluster_count() const {
  return assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end());
}

double partition_quality(const std::vector<int>& assignment, const SimilarityMatrix& sims,
                         double gamma) {
  if (assignment.size() != sims.size()) {
    throw Error(ErrorKind::InvalidArgument, "assignment and similarity sizes differ");
  }
  double within = 0.0;
  for (const auto& e : sims.entries()) {
    if (assignment[e.a] == assignment[e.b]) within += e.value;
  }
  std::map<int, double> sizes;
  for (const int c : assignment) sizes[c] += 1.0;
  double pairs = 0.0;
  for (const auto& [_, s] : sizes) pairs += s * (s - 1.0) / 2.0;
  return within - gamma * pairs;
}

double best_single_move_gain(const std::vector<int>& assignment, const SimilarityMatrix& sims,
                             double gamma) {
  const std::size_t n = sims.size();
  if (assignment.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "assignment and similarity sizes differ");
  }
  const auto adj = sims.adjacency();
  std::map<int, double> sizes;
  for (const int c : assignment) sizes[c] += 1.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < n; ++v) {
    std::map<int, double> weight_to;
    for (const auto& [u, w] : adj[v]) weight_to[assignment[u]] += w;
    const int current = assignment[v];
    const double stay = weight_to[current] - gamma * (sizes[current] - 1.0);
    if (sizes[current] > 1.0) best = std::max(best, -stay);  // new singleton
    for (const auto& [c, size] : sizes) {
      if (c == current) continue;
      const auto it = weight_to.find(c);
      const double k = it == weight_to.end() ? 0.0 : it->second;
      best = std::max(best, (k - gamma * size) - stay);
    }
  }
  return best;
}

std::vector<int> renumber_clusters(const std::vector<int>& assignment) {
  struct Info {
    std::size_t size = 0;
    std::size_t first = SIZE_MAX;
  };
  std::map<int, Info> info;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto& c = info[assignment[i]];
    ++c.size;
    c.first = std::min(c.first, i);
  }
  std::vector<std::pair<int, Info>> order(info.begin(), info.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second.size != b.second.size) return a.second.size > b.second.size;
    return a.second.first < b.second.first;
  });
  std::map<int, int> id;
  for (std::size_t k = 0; k < order.size(); ++k) id[order[k].first] = static_cast<int>(k + 1);
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) out[i] = id[assignment[i]];
  return out;
}

ClusterAssignment cluster(const SimilarityMatrix& sims, double gamma, std::uint64_t seed,
                          int restarts) {
  if (!(gamma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 0");
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be >= 1");
  const std::size_t n = sims.size();

  Level base;
  base.size.assign(n, 1.0);
  base.adj = sims.adjacency();

  ClusterAssignment best;
  best.gamma = gamma;
  best.seed = seed;
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(mix_seed(seed, 0x5eedULL + static_cast<std::uint64_t>(r)));
    std::vector<std::size_t> partition(n);
    std::iota(partition.begin(), partition.end(), 0);
    // Every accepted move raises the quality, so the cycle cannot revisit a
    // partition; the cap only guards against pathological rounding.
    for (int cycle = 0; cycle < 10000; ++cycle) {
      auto next = smart_local_moving(base, partition, gamma, rng);
      if (next == partition) break;
      partition = std::move(next);
    }
    std::vector<int> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<int>(partition[v]);
    labels = renumber_clusters(labels);
    const double q = partition_quality(labels, sims, gamma);
    best.restart_qualities.push_back(q);
    if (r == 0 || q > best.quality) {
      best.quality = q;
      best.assignment = std::move(labels);
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace scimap
