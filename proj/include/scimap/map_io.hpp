#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scimap/corpus.hpp"

namespace scimap {

/// Everything that determines a map besides the corpus and thesaurus.
struct PipelineConfig {
  UnitKind unit = UnitKind::keyword;
  std::int64_t min_occurrences = 20;
  double resolution = 1.0;
  std::uint64_t seed = 42;
  int restarts = 10;
  int max_iterations = 1000;
  double rel_tolerance = 1e-6;
  double jitter_epsilon = 1e-9;

  bool operator==(const PipelineConfig&) const = default;
};

struct MapNode {
  int id = 0;  // 1-based
  std::string label;
  double x = 0.0;
  double y = 0.0;
  int cluster = 1;
  std::int64_t occurrences = 0;
  std::int64_t links = 0;
  std::int64_t total_link_strength = 0;
  std::optional<double> avg_pub_date;

  bool operator==(const MapNode&) const = default;
};

struct MapEdge {
  int source = 0;  // 1-based, source < target
  int target = 0;
  std::int64_t strength = 0;

  bool operator==(const MapEdge&) const = default;
};

struct ItemMap {
  std::vector<MapNode> nodes;
  std::vector<MapEdge> edges;
  PipelineConfig config;

  bool operator==(const ItemMap&) const = default;
};

extern const char* const kMapFileHeader;

/// Tab-separated node table; doubles are written with 17 significant digits
/// so reading it back is lossless. An absent score is an empty cell.
void write_map_file(std::ostream& out, const ItemMap& map);
/// Reads the node table. Edges and config are left default.
/// Throws Error{SchemaMismatch} on a wrong header or malformed row.
ItemMap read_map_file(std::istream& in);

/// "i\tj\tstrength" lines.
void write_network_file(std::ostream& out, const ItemMap& map);
std::vector<MapEdge> read_network_file(std::istream& in);

/// {"nodes":[...],"edges":[...],"config":{...}} with keys in a fixed order and
/// real numbers rounded to 12 significant digits.
std::string write_json(const ItemMap& map);
std::string config_json(const PipelineConfig& config);

/// Rounds to 12 significant digits.
double round_significant(double value);

}  // namespace scimap
