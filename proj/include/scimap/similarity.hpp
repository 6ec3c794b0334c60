#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "scimap/cooccurrence.hpp"

namespace scimap {

struct SimilarityEntry {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double value = 0.0;
};

/// Symmetric sparse similarity matrix; absent pairs are zero.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  /// Entries are normalised to a < b, sorted, and zero values are dropped.
  /// Throws Error{InvalidArgument} on negative values, self-pairs, or
  /// repeated pairs.
  SimilarityMatrix(std::size_t n, std::vector<SimilarityEntry> entries);

  std::size_t size() const { return n_; }
  const std::vector<SimilarityEntry>& entries() const { return entries_; }
  double at(std::size_t i, std::size_t j) const;
  double max_value() const;

  /// Neighbour lists (j, s_ij), neighbours ascending.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;

  SimilarityMatrix scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<SimilarityEntry> entries_;
};

/// s_ij = 2 m c_ij / (w_i w_j). Throws Error{DegenerateNetwork} when m == 0
/// or some node has zero total link strength.
SimilarityMatrix association_strength(const CooccurrenceNetwork& net);

/// "i\tj\ts" debug dump, 1-based ids.
void write_similarity_tsv(std::ostream& out, const SimilarityMatrix& sims);

}  // namespace scimap
