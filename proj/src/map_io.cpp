#include "scimap/map_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>

#include <json.hpp>

#include "scimap/error.hpp"

namespace scimap {

using ordered_json = nlohmann::ordered_json;

const char* const kMapFileHeader =
    "id\tlabel\tx\ty\tcluster\tweight<Occurrences>\tweight<Links>\tweight<Total link "
    "strength>\tscore<Avg. pub. date>";

namespace {

std::string format_double(double v) {
  // to_chars ignores the locale, so the separator is always '.'.
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::SchemaMismatch, "line " + std::to_string(line_no) + ": bad " + what +
                                               " '" + std::string(s) + "'");
  }
  return value;
}

ordered_json config_to_json(const PipelineConfig& c) {
  ordered_json j;
  j["unit"] = to_string(c.unit);
  j["min_occurrences"] = c.min_occurrences;
  j["resolution"] = round_significant(c.resolution);
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["max_iterations"] = c.max_iterations;
  j["rel_tolerance"] = round_significant(c.rel_tolerance);
  j["jitter_epsilon"] = round_significant(c.jitter_epsilon);
  return j;
}

}  // namespace

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 11);
  double out = value;
  std::from_chars(buf, ptr, out);
  return out;
}

void write_map_file(std::ostream& out, const ItemMap& map) {
  out << kMapFileHeader << '\n';
  for (const auto& n : map.nodes) {
    out << n.id << '\t' << n.label << '\t' << format_double(n.x) << '\t' << format_double(n.y)
        << '\t' << n.cluster << '\t' << n.occurrences << '\t' << n.links << '\t'
        << n.total_link_strength << '\t';
    if (n.avg_pub_date) out << format_double(*n.avg_pub_date);
    out << '\n';
  }
}

ItemMap read_map_file(std::istream& in) {
  ItemMap map;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::SchemaMismatch, "map file is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMapFileHeader) {
    throw Error(ErrorKind::SchemaMismatch, "unexpected map file header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 9) {
      throw Error(ErrorKind::SchemaMismatch,
                  "line " + std::to_string(line_no) + ": expected 9 columns");
    }
    MapNode n;
    n.id = parse_number<int>(cols[0], line_no, "id");
    n.label = std::string(cols[1]);
    n.x = parse_number<double>(cols[2], line_no, "x");
    n.y = parse_number<double>(cols[3], line_no, "y");
    n.cluster = parse_number<int>(cols[4], line_no, "cluster");
    n.occurrences = parse_number<std::int64_t>(cols[5], line_no, "occurrences");
    n.links = parse_number<std::int64_t>(cols[6], line_no, "links");
    n.total_link_strength = parse_number<std::int64_t>(cols[7], line_no, "total link strength");
    if (!cols[8].empty()) n.avg_pub_date = parse_number<double>(cols[8], line_no, "score");
    map.nodes.push_back(std::move(n));
  }
  return map;
}

void write_network_file(std::ostream& out, const ItemMap& map) {
  for (const auto& e : map.edges) out << e.source << '\t' << e.target << '\t' << e.strength << '\n';
}

std::vector<MapEdge> read_network_file(std::istream& in) {
  std::vector<MapEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw Error(ErrorKind::SchemaMismatch,
                  "line " + std::to_string(line_no) + ": expected i<TAB>j<TAB>strength");
    }
    edges.push_back({parse_number<int>(cols[0], line_no, "source"),
                     parse_number<int>(cols[1], line_no, "target"),
                     parse_number<std::int64_t>(cols[2], line_no, "strength")});
  }
  return edges;
}

std::string config_json(const PipelineConfig& config) { return config_to_json(config).dump(); }

std::string write_json(const ItemMap& map) {
  ordered_json j;
  auto nodes = ordered_json::array();
  for (const auto& n : map.nodes) {
    ordered_json node;
    node["id"] = n.id;
    node["label"] = n.label;
    node["x"] = round_significant(n.x);
    node["y"] = round_significant(n.y);
    node["cluster"] = n.cluster;
    node["weights"] = {{"Occurrences", n.occurrences},
                       {"Links", n.links},
                       {"Total link strength", n.total_link_strength}};
    node["scores"] = {{"Avg. pub. date", n.avg_pub_date
                                             ? ordered_json(round_significant(*n.avg_pub_date))
                                             : ordered_json(nullptr)}};
    nodes.push_back(std::move(node));
  }
  auto edges = ordered_json::array();
  for (const auto& e : map.edges) {
    edges.push_back({{"source_id", e.source}, {"target_id", e.target}, {"strength", e.strength}});
  }
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  j["config"] = config_to_json(map.config);
  return j.dump();
}

}  // namespace scimap
