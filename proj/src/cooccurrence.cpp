#include "scimap/cooccurrence.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "scimap/error.hpp"

namespace scimap {

CooccurrenceNetwork::CooccurrenceNetwork(UnitKind unit, std::vector<NetworkNode> nodes,
                                         std::vector<Edge> edges, std::int64_t min_occurrences)
    : unit_(unit),
      nodes_(std::move(nodes)),
      strength_(nodes_.size(), 0),
      degree_(nodes_.size(), 0),
      min_occurrences_(min_occurrences) {
  for (auto e : edges) {
    if (e.a == e.b) {
      throw Error(ErrorKind::InvalidArgument, "self-edge on node " + std::to_string(e.a));
    }
    if (e.a >= nodes_.size() || e.b >= nodes_.size()) {
      throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    }
    if (e.weight <= 0) continue;
    if (e.a > e.b) std::swap(e.a, e.b);
    index_[{e.a, e.b}] += e.weight;
  }
  edges_.reserve(index_.size());
  for (const auto& [key, w] : index_) {
    edges_.push_back({key.first, key.second, w});
    strength_[key.first] += w;
    strength_[key.second] += w;
    ++degree_[key.first];
    ++degree_[key.second];
    total_weight_ += w;
  }
}

std::int64_t CooccurrenceNetwork::weight(std::size_t i, std::size_t j) const {
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  const auto it = index_.find({i, j});
  return it == index_.end() ? 0 : it->second;
}

std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> CooccurrenceNetwork::adjacency()
    const {
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(nodes_.size());
  for (const auto& e : edges_) {
    adj[e.a].emplace_back(e.b, e.weight);
    adj[e.b].emplace_back(e.a, e.weight);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

CooccurrenceNetwork CooccurrenceNetwork::induced(const std::vector<std::size_t>& keep) const {
  std::vector<std::size_t> order = keep;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<std::size_t> remap(nodes_.size(), nodes_.size());
  std::vector<NetworkNode> nodes;
  nodes.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    nodes.push_back(nodes_[order[k]]);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (remap[e.a] < nodes.size() && remap[e.b] < nodes.size()) {
      edges.push_back({remap[e.a], remap[e.b], e.weight});
    }
  }
  return CooccurrenceNetwork(unit_, std::move(nodes), std::move(edges), min_occurrences_);
}

std::map<std::string, std::int64_t> count_occurrences(const std::vector<BibRecord>& records,
                                                      UnitKind unit) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& r : records) {
    for (const auto& label : extract_units(r, unit)) ++counts[label];
  }
  return counts;
}

CooccurrenceNetwork build_network(const std::vector<BibRecord>& records, UnitKind unit,
                                  std::int64_t min_occurrences) {
  if (min_occurrences < 1) {
    throw Error(ErrorKind::InvalidArgument, "min_occurrences must be >= 1");
  }
  const auto counts = count_occurrences(records, unit);
  std::vector<NetworkNode> nodes;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [label, count] : counts) {  // std::map -> label order
    if (count < min_occurrences) continue;
    index.emplace(label, nodes.size());
    nodes.push_back({label, count, {}});
  }
  if (nodes.empty()) {
    throw Error(ErrorKind::EmptyNetwork, std::string("no ") + to_string(unit) +
                                             " label occurs in at least " +
                                             std::to_string(min_occurrences) + " records");
  }

  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> pair_counts;
  std::vector<std::size_t> present;
  for (const auto& r : records) {
    present.clear();
    for (const auto& label : extract_units(r, unit)) {
      if (const auto it = index.find(label); it != index.end()) present.push_back(it->second);
    }
    std::sort(present.begin(), present.end());
    for (std::size_t x = 0; x < present.size(); ++x) {
      nodes[present[x]].supporting_records.insert(r.id);
      for (std::size_t y = x + 1; y < present.size(); ++y) {
        ++pair_counts[{present[x], present[y]}];
      }
    }
  }
  std::vector<Edge> edges;
  edges.reserve(pair_counts.size());
  for (const auto& [key, c] : pair_counts) edges.push_back({key.first, key.second, c});
  return CooccurrenceNetwork(unit, std::move(nodes), std::move(edges), min_occurrences);
}

ComponentResult largest_component(const CooccurrenceNetwork& net) {
  const std::size_t n = net.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : net.edges()) {
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  // Nodes are label-sorted, so the smallest index in a component is its
  // smallest label; first-seen root therefore breaks ties correctly.
  std::vector<std::size_t> size(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++size[find(i)];
  std::size_t best_root = n;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (best_root == n || size[r] > size[best_root]) best_root = r;
  }
  ComponentResult result;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == best_root) {
      keep.push_back(i);
    } else {
      result.dropped.push_back(net.nodes()[i].label);
    }
  }
  std::sort(result.dropped.begin(), result.dropped.end());
  result.network = keep.size() == n ? net : net.induced(keep);
  return result;
}

void write_node_table(std::ostream& out, const CooccurrenceNetwork& net) {
  out << "id\tlabel\toccurrences\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    out << (i + 1) << '\t' << net.nodes()[i].label << '\t' << net.nodes()[i].occurrences << '\n';
  }
}

void write_edge_table(std::ostream& out, const CooccurrenceNetwork& net) {
  for (const auto& e : net.edges()) {
    out << (e.a + 1) << '\t' << (e.b + 1) << '\t' << e.weight << '\n';
  }
}

}  // namespace scimap
