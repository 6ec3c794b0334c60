#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scimap/corpus.hpp"

namespace scimap {

struct NetworkNode {
  std::string label;
  std::int64_t occurrences = 0;
  std::set<std::string> supporting_records;  // BibRecord ids

  bool operator==(const NetworkNode&) const = default;
};

/// Undirected edge between node indices `a < b`.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t weight = 0;

  bool operator==(const Edge&) const = default;
};

/// Labelled nodes (sorted by label) with symmetric integer co-occurrence
/// weights stored once per unordered pair.
class CooccurrenceNetwork {
 public:
  CooccurrenceNetwork() = default;
  /// Edges may come in any order; they are normalised to a < b and sorted.
  CooccurrenceNetwork(UnitKind unit, std::vector<NetworkNode> nodes, std::vector<Edge> edges,
                      std::int64_t min_occurrences);

  UnitKind unit() const { return unit_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<NetworkNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t min_occurrences() const { return min_occurrences_; }

  /// c_ij; zero for absent pairs and for i == j.
  std::int64_t weight(std::size_t i, std::size_t j) const;
  /// Total link strength w_i = sum_j c_ij.
  std::int64_t strength(std::size_t i) const { return strength_[i]; }
  const std::vector<std::int64_t>& strengths() const { return strength_; }
  /// Number of distinct neighbours.
  std::size_t degree(std::size_t i) const { return degree_[i]; }
  /// m = (1/2) sum_i w_i.
  std::int64_t total_weight() const { return total_weight_; }

  /// Adjacency lists, (neighbour, c_ij), neighbours ascending.
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adjacency() const;

  /// Sub-network induced by `keep` (indices into nodes(), any order).
  CooccurrenceNetwork induced(const std::vector<std::size_t>& keep) const;

 private:
  UnitKind unit_ = UnitKind::keyword;
  std::vector<NetworkNode> nodes_;
  std::vector<Edge> edges_;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> index_;
  std::vector<std::int64_t> strength_;
  std::vector<std::size_t> degree_;
  std::int64_t total_weight_ = 0;
  std::int64_t min_occurrences_ = 1;
};

/// Document counts: each record contributes at most 1 per label.
std::map<std::string, std::int64_t> count_occurrences(const std::vector<BibRecord>& records,
                                                      UnitKind unit);

/// Nodes are labels occurring in at least `min_occurrences` records; edges
/// count records containing both endpoints. Throws Error{InvalidArgument}
/// when min_occurrences < 1 and Error{EmptyNetwork} when no label survives.
CooccurrenceNetwork build_network(const std::vector<BibRecord>& records, UnitKind unit,
                                  std::int64_t min_occurrences);

struct ComponentResult {
  CooccurrenceNetwork network;
  std::vector<std::string> dropped;  // sorted labels
};

/// Largest connected component; ties go to the component holding the
/// lexicographically smallest label.
ComponentResult largest_component(const CooccurrenceNetwork& net);

/// "id\tlabel\toccurrences", 1-based ids.
void write_node_table(std::ostream& out, const CooccurrenceNetwork& net);
/// "i\tj\tstrength" triples, 1-based ids, i < j.
void write_edge_table(std::ostream& out, const CooccurrenceNetwork& net);

}  // namespace scimap
