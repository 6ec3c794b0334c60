// scimap: command-line driver for building co-word science maps.
//
//   scimap ingest --input export.csv            CSV -> corpus cache (NDJSON)
//   scimap clean  --thesaurus rules.tsv         apply curation rules to the cache
//   scimap map    --unit keywords               build map, network and JSON files
//   scimap export --map m.txt --format json     convert a map file
//   scimap serve  --port 8750                   local HTTP service for curation
//
// Exit codes: 0 success, 1 data error, 2 usage error. Errors are reported as
// a single stderr line "scimap: error: <Kind>: <message>".

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scimap/error.hpp"
#include "scimap/pipeline.hpp"
#include "scimap/server.hpp"

namespace fs = std::filesystem;
using namespace scimap;

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

void report(std::string_view kind, std::string message) {
  for (auto& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "scimap: error: " << kind << ": " << message << '\n';
}

fs::path data_dir() {
  if (const char* env = std::getenv("SCIMAP_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".scimap";
}

fs::path default_cache() { return data_dir() / "corpus.ndjson"; }

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

std::vector<BibRecord> load_corpus(const std::string& path_text) {
  const fs::path path = path_text.empty() ? default_cache() : fs::path(path_text);
  auto in = open_input(path);
  if (path.extension() == ".csv") {
    auto parsed = parse_corpus(in);
    return std::move(parsed.records);
  }
  return read_corpus_cache(in);
}

Thesaurus load_thesaurus(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_input(path);
  return parse_thesaurus(in);
}

struct PipelineFlags {
  std::string unit = "keywords";
  std::int64_t min_occurrences = 20;
  double resolution = 1.0;
  std::uint64_t seed = 42;
  int restarts = 10;

  void attach(CLI::App& cmd) {
    cmd.add_option("--unit", unit, "Unit of analysis")
        ->check(CLI::IsMember({"keywords", "authors", "countries"}))
        ->capture_default_str();
    cmd.add_option("--min-occurrences", min_occurrences, "Minimum records per item")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--resolution", resolution, "Clustering resolution (gamma)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd.add_option("--restarts", restarts, "Layout and clustering restarts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.unit = parse_unit_kind(unit);
    c.min_occurrences = min_occurrences;
    c.resolution = resolution;
    c.seed = seed;
    c.restarts = restarts;
    return c;
  }
};

std::string to_string_map(const ItemMap& map) {
  std::ostringstream out;
  write_map_file(out, map);
  return out.str();
}

std::string to_string_network(const ItemMap& map) {
  std::ostringstream out;
  write_network_file(out, map);
  return out.str();
}

std::string to_string_nodes(const CooccurrenceNetwork& net) {
  std::ostringstream out;
  write_node_table(out, net);
  return out.str();
}

std::string density_bytes(const ItemMap& map, const std::string& format, std::size_t grid,
                          double bandwidth) {
  std::vector<Point> positions;
  std::vector<double> weights;
  for (const auto& n : map.nodes) {
    positions.push_back({n.x, n.y});
    weights.push_back(static_cast<double>(n.occurrences));
  }
  const double h = bandwidth > 0.0 ? bandwidth : default_bandwidth(positions);
  const auto field = density_field(positions, weights, grid, h);
  std::ostringstream out;
  if (format == "pgm") {
    write_density_pgm(out, field);
  } else {
    write_density_json(out, field);
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-word science mapping toolkit"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse a bibliographic CSV export into the corpus cache");
  std::string ingest_input;
  std::string ingest_output;
  std::string gazetteer_path;
  bool strict = false;
  bool verbose = false;
  CorpusSchema schema;
  std::string keyword_delimiter = ";";
  ingest->add_option("--input", ingest_input, "CSV export")->required();
  ingest->add_option("--output", ingest_output, "Corpus cache (default $SCIMAP_DATA_DIR/corpus.ndjson)");
  ingest->add_option("--gazetteer", gazetteer_path, "alias<TAB>country table replacing the bundled one");
  ingest->add_option("--keyword-delimiter", keyword_delimiter, "Keyword separator")
      ->check([](const std::string& s) { return s.size() == 1 ? "" : "must be one character"; });
  ingest->add_option("--authors-column", schema.authors)->capture_default_str();
  ingest->add_option("--keywords-column", schema.keywords)->capture_default_str();
  ingest->add_option("--year-column", schema.year)->capture_default_str();
  ingest->add_option("--affiliations-column", schema.affiliations)->capture_default_str();
  ingest->add_option("--month-column", schema.month, "Optional publication-month column");
  ingest->add_flag("--strict", strict, "Fail on the first malformed row");
  ingest->add_flag("--verbose", verbose, "Print every parse warning");

  // clean
  auto* clean = app.add_subcommand("clean", "Apply a thesaurus to the corpus cache");
  std::string clean_corpus;
  std::string clean_output;
  std::string clean_thesaurus;
  std::string clean_unit = "keywords";
  clean->add_option("--corpus", clean_corpus, "Corpus cache or CSV");
  clean->add_option("--thesaurus", clean_thesaurus, "Thesaurus TSV")->required();
  clean->add_option("--output", clean_output, "Cleaned corpus cache (default: overwrite input cache)");
  clean->add_option("--unit", clean_unit)
      ->check(CLI::IsMember({"keywords", "authors", "countries"}))
      ->capture_default_str();

  // map
  auto* map_cmd = app.add_subcommand("map", "Build a map, network and JSON from the corpus");
  PipelineFlags map_flags;
  map_flags.attach(*map_cmd);
  std::string map_corpus;
  std::string map_thesaurus;
  std::string out_dir = ".";
  std::string prefix;
  std::string iteration_log;
  std::string density_out;
  std::optional<double> cutoff;
  map_cmd->add_option("--corpus", map_corpus, "Corpus cache or CSV");
  map_cmd->add_option("--thesaurus", map_thesaurus, "Thesaurus TSV");
  map_cmd->add_option("--output-dir", out_dir)->capture_default_str();
  map_cmd->add_option("--prefix", prefix, "Output file prefix (default: the unit name)");
  map_cmd->add_option("--iteration-log", iteration_log, "Write the layout descent log as CSV");
  map_cmd->add_option("--density", density_out, "Write the density grid (.pgm or .json)");
  map_cmd->add_option("--cutoff", cutoff, "Print items with a later average publication date");

  // export
  auto* export_cmd = app.add_subcommand("export", "Convert a map file to JSON or a density grid");
  PipelineFlags export_flags;
  export_flags.attach(*export_cmd);
  std::string export_map;
  std::string export_network;
  std::string export_format = "json";
  std::string export_output;
  std::size_t grid = 200;
  double bandwidth = 0.0;
  export_cmd->add_option("--map", export_map, "Map file")->required();
  export_cmd->add_option("--network", export_network, "Network file (edges)");
  export_cmd->add_option("--format", export_format)
      ->check(CLI::IsMember({"json", "density-json", "density-pgm"}))
      ->capture_default_str();
  export_cmd->add_option("--output", export_output, "Output file")->required();
  export_cmd->add_option("--grid", grid, "Density grid resolution")
      ->check(CLI::Range(2, 10000))
      ->capture_default_str();
  export_cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth (0 = automatic)")
      ->check(CLI::NonNegativeNumber);

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the map over local HTTP for curation");
  PipelineFlags serve_flags;
  serve_flags.attach(*serve);
  std::string serve_corpus;
  std::string serve_thesaurus;
  std::string host = "127.0.0.1";
  int port = 8750;
  serve->add_option("--corpus", serve_corpus, "Corpus cache or CSV");
  serve->add_option("--thesaurus", serve_thesaurus, "Initial thesaurus TSV");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->check(CLI::Range(1, 65535))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("Usage", e.what());
    return kUsageError;
  }

  try {
    if (*ingest) {
      ParseOptions options;
      options.strict = strict;
      Gazetteer custom;
      if (!gazetteer_path.empty()) {
        auto in = open_input(gazetteer_path);
        custom = Gazetteer::from_tsv(in);
        options.gazetteer = &custom;
      }
      schema.keyword_delimiter = keyword_delimiter[0];
      auto in = open_input(ingest_input);
      const auto parsed = parse_corpus(in, schema, options);
      if (verbose) {
        for (const auto& w : parsed.warnings) std::cerr << "row " << w.row << ": " << w.message << '\n';
      }
      std::ostringstream cache;
      write_corpus_cache(cache, parsed.records);
      const fs::path output = ingest_output.empty() ? default_cache() : fs::path(ingest_output);
      write_file(output, cache.str());
      std::cout << "records=" << parsed.records.size()
                << " skipped_no_keywords=" << parsed.skipped_no_keywords
                << " malformed_rows=" << parsed.malformed_rows
                << " warnings=" << parsed.warnings.size() << " output=" << output.string() << '\n';
    } else if (*clean) {
      const auto records = load_corpus(clean_corpus);
      const auto thesaurus = load_thesaurus(clean_thesaurus);
      const auto result = apply_thesaurus(records, thesaurus, parse_unit_kind(clean_unit));
      std::ostringstream cache;
      write_corpus_cache(cache, result.records);
      fs::path output = clean_output;
      if (output.empty()) output = clean_corpus.empty() ? default_cache() : fs::path(clean_corpus);
      write_file(output, cache.str());
      std::cout << "records=" << result.records.size()
                << " merged_labels=" << result.report.merged_labels
                << " removed_terms=" << result.report.removed_terms
                << " removed_records=" << result.report.removed_records
                << " output=" << output.string() << '\n';
    } else if (*map_cmd) {
      const auto config = map_flags.config();
      const auto records = load_corpus(map_corpus);
      const auto thesaurus = load_thesaurus(map_thesaurus);
      const auto result = curation_round(records, thesaurus, config, !iteration_log.empty());
      if (!iteration_log.empty()) {
        std::ostringstream log;
        write_iteration_log(log, result.layout.log);
        write_file(iteration_log, log.str());
      }
      const std::string stem = prefix.empty() ? to_string(config.unit) : prefix;
      const fs::path dir = out_dir;
      write_file(dir / (stem + "_map.txt"), to_string_map(result.map));
      write_file(dir / (stem + "_network.txt"), to_string_network(result.map));
      write_file(dir / (stem + "_nodes.txt"), to_string_nodes(result.network));
      write_file(dir / (stem + ".json"), write_json(result.map));
      if (!density_out.empty()) {
        const auto format = fs::path(density_out).extension() == ".pgm" ? "pgm" : "json";
        write_file(density_out, density_bytes(result.map, format, 200, 0.0));
      }
      std::cout << "records=" << result.records.size() << " nodes=" << result.map.nodes.size()
                << " edges=" << result.map.edges.size()
                << " clusters=" << result.clusters.cluster_count()
                << " dropped=" << result.dropped_labels.size() << '\n';
      if (cutoff) {
        std::vector<std::string> labels;
        for (const auto& n : result.map.nodes) labels.push_back(n.label);
        for (const auto& label : emerging_filter(labels, result.overlay.scores, *cutoff)) {
          std::cout << "emerging\t" << label << '\n';
        }
      }
    } else if (*export_cmd) {
      auto in = open_input(export_map);
      ItemMap map = read_map_file(in);
      map.config = export_flags.config();
      if (!export_network.empty()) {
        auto net_in = open_input(export_network);
        map.edges = read_network_file(net_in);
      }
      if (export_format == "json") {
        write_file(export_output, write_json(map));
      } else {
        write_file(export_output, density_bytes(map, export_format == "density-pgm" ? "pgm" : "json",
                                                grid, bandwidth));
      }
    } else if (*serve) {
      MapService service(load_corpus(serve_corpus), load_thesaurus(serve_thesaurus),
                         serve_flags.config());
      HttpServer server(service);
      std::cerr << "serving on http://" << host << ':' << port << '\n';
      server.run(host, port);
    }
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return kDataError;
  } catch (const std::exception& e) {
    report("Internal", e.what());
    return kDataError;
  }
  return 0;
}
