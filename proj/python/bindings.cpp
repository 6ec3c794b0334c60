#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scimap/clustering.hpp"
#include "scimap/cooccurrence.hpp"
#include "scimap/corpus.hpp"
#include "scimap/error.hpp"
#include "scimap/layout.hpp"
#include "scimap/map_io.hpp"
#include "scimap/overlay.hpp"
#include "scimap/pipeline.hpp"
#include "scimap/similarity.hpp"
#include "scimap/thesaurus.hpp"

namespace py = pybind11;
using namespace scimap;

namespace {

using XY = std::pair<double, double>;

std::vector<Point> to_points(const std::vector<XY>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

std::vector<XY> to_xy(const std::vector<Point>& pts) {
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

RuleAction parse_action(const std::string& name) {
  if (name == "merge") return RuleAction::merge;
  if (name == "remove_term") return RuleAction::remove_term;
  if (name == "remove_term_and_studies") return RuleAction::remove_term_and_studies;
  throw Error(ErrorKind::UnknownAction, "unknown action '" + name + "'");
}

template <typename F>
std::string to_text(F&& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Co-word science mapping: corpus, thesaurus, networks, layout, clustering, overlays.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "ScimapError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type.get_stored(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<BibRecord>(m, "BibRecord")
      .def(py::init<>())
      .def_readwrite("id", &BibRecord::id)
      .def_readwrite("title", &BibRecord::title)
      .def_readwrite("authors", &BibRecord::authors)
      .def_readwrite("affiliations", &BibRecord::affiliations)
      .def_readwrite("countries", &BibRecord::countries)
      .def_readwrite("keywords", &BibRecord::keywords)
      .def_readwrite("pub_year", &BibRecord::pub_year)
      .def_readwrite("pub_month", &BibRecord::pub_month)
      .def_readwrite("venue", &BibRecord::venue)
      .def_readwrite("citations", &BibRecord::citations)
      .def("__eq__", [](const BibRecord& a, const BibRecord& b) { return a == b; })
      .def("__repr__", [](const BibRecord& r) { return "<BibRecord " + r.id + ">"; });

  py::class_<ParseResult>(m, "ParseResult")
      .def_readonly("records", &ParseResult::records)
      .def_readonly("skipped_no_keywords", &ParseResult::skipped_no_keywords)
      .def_readonly("malformed_rows", &ParseResult::malformed_rows);

  m.def("canonicalize_label", &canonicalize_label, py::arg("label"));
  m.def(
      "parse_corpus",
      [](const std::string& text, bool strict, char keyword_delimiter) {
        CorpusSchema schema;
        schema.keyword_delimiter = keyword_delimiter;
        ParseOptions options;
        options.strict = strict;
        return parse_corpus(std::string_view(text), schema, options);
      },
      py::arg("text"), py::arg("strict") = false, py::arg("keyword_delimiter") = ';');

  py::class_<Thesaurus>(m, "Thesaurus")
      .def(py::init<>())
      .def_static(
          "parse", [](const std::string& tsv) { return parse_thesaurus(std::string_view(tsv)); }, py::arg("tsv"))
      .def(
          "add",
          [](Thesaurus& t, const std::string& label, const std::string& action, const std::string& target) {
            t.add({label, parse_action(action), target});
          },
          py::arg("label"), py::arg("action"), py::arg("target") = "")
      .def("rules",
           [](const Thesaurus& t) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& r : t.rules()) out.emplace_back(r.label, to_string(r.action), r.target);
             return out;
           })
      .def("to_tsv", [](const Thesaurus& t) { return to_text([&](std::ostream& o) { write_thesaurus(o, t); }); })
      .def("__len__", &Thesaurus::size);

  m.def(
      "apply_thesaurus",
      [](const std::vector<BibRecord>& records, const Thesaurus& t, const std::string& unit) {
        auto res = apply_thesaurus(records, t, parse_unit_kind(unit));
        py::dict report;
        report["merged_labels"] = res.report.merged_labels;
        report["removed_terms"] = res.report.removed_terms;
        report["removed_records"] = res.report.removed_records;
        return py::make_tuple(std::move(res.records), report);
      },
      py::arg("records"), py::arg("thesaurus"), py::arg("unit") = "keywords");

  py::class_<CooccurrenceNetwork>(m, "Network")
      .def("__len__", &CooccurrenceNetwork::size)
      .def_property_readonly("labels",
                             [](const CooccurrenceNetwork& n) {
                               std::vector<std::string> out;
                               for (const auto& node : n.nodes()) out.push_back(node.label);
                               return out;
                             })
      .def_property_readonly("occurrences",
                             [](const CooccurrenceNetwork& n) {
                               std::vector<std::int64_t> out;
                               for (const auto& node : n.nodes()) out.push_back(node.occurrences);
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const CooccurrenceNetwork& n) {
                               std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> out;
                               for (const auto& e : n.edges()) out.emplace_back(e.a, e.b, e.weight);
                               return out;
                             })
      .def("weight", &CooccurrenceNetwork::weight)
      .def("strength", &CooccurrenceNetwork::strength)
      .def_property_readonly("total_weight", &CooccurrenceNetwork::total_weight);

  m.def(
      "build_network",
      [](const std::vector<BibRecord>& records, const std::string& unit, std::int64_t min_occurrences) {
        return build_network(records, parse_unit_kind(unit), min_occurrences);
      },
      py::arg("records"), py::arg("unit") = "keywords", py::arg("min_occurrences") = 20);
  m.def(
      "largest_component",
      [](const CooccurrenceNetwork& net) {
        auto res = largest_component(net);
        return py::make_tuple(std::move(res.network), std::move(res.dropped));
      },
      py::arg("network"));

  py::class_<SimilarityMatrix>(m, "SimilarityMatrix")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& entries) {
             std::vector<SimilarityEntry> es;
             for (const auto& [a, b, v] : entries) es.push_back({a, b, v});
             return SimilarityMatrix(n, std::move(es));
           }),
           py::arg("n"), py::arg("entries"))
      .def("__len__", &SimilarityMatrix::size)
      .def("at", &SimilarityMatrix::at)
      .def("max_value", &SimilarityMatrix::max_value)
      .def_property_readonly("entries", [](const SimilarityMatrix& s) {
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const auto& e : s.entries()) out.emplace_back(e.a, e.b, e.value);
        return out;
      });

  m.def("association_strength", &association_strength, py::arg("network"));

  m.def(
      "stress", [](const std::vector<XY>& pos, const SimilarityMatrix& s) { return stress(to_points(pos), s); },
      py::arg("positions"), py::arg("sims"));
  m.def(
      "mean_pairwise_distance", [](const std::vector<XY>& pos) { return mean_pairwise_distance(to_points(pos)); },
      py::arg("positions"));
  m.def(
      "canonical_transform", [](const std::vector<XY>& pos) { return to_xy(canonical_transform(to_points(pos))); },
      py::arg("positions"));

  py::class_<Layout>(m, "Layout")
      .def_property_readonly("positions", [](const Layout& l) { return to_xy(l.positions); })
      .def_readonly("stress", &Layout::stress)
      .def_readonly("converged", &Layout::converged)
      .def_readonly("iterations", &Layout::iterations)
      .def_readonly("seed", &Layout::seed)
      .def_readonly("best_restart", &Layout::best_restart)
      .def_property_readonly("log", [](const Layout& l) {
        std::vector<std::tuple<int, int, double>> out;
        for (const auto& r : l.log) out.emplace_back(r.restart, r.iteration, r.objective);
        return out;
      });

  m.def(
      "optimize_layout",
      [](const SimilarityMatrix& sims, std::uint64_t seed, int restarts, int max_iterations, double rel_tolerance,
         bool record_log) {
        LayoutConfig c;
        c.seed = seed;
        c.restarts = restarts;
        c.max_iterations = max_iterations;
        c.rel_tolerance = rel_tolerance;
        c.record_log = record_log;
        py::gil_scoped_release release;
        return optimize_layout(sims, c);
      },
      py::arg("sims"), py::arg("seed") = 42, py::arg("restarts") = 10, py::arg("max_iterations") = 1000,
      py::arg("rel_tolerance") = 1e-6, py::arg("record_log") = false);

  py::class_<ClusterAssignment>(m, "ClusterAssignment")
      .def_readonly("assignment", &ClusterAssignment::assignment)
      .def_readonly("quality", &ClusterAssignment::quality)
      .def_readonly("gamma", &ClusterAssignment::gamma)
      .def_readonly("restart_qualities", &ClusterAssignment::restart_qualities)
      .def_property_readonly("cluster_count", &ClusterAssignment::cluster_count);

  m.def("partition_quality", &partition_quality, py::arg("assignment"), py::arg("sims"), py::arg("gamma"));
  m.def(
      "cluster",
      [](const SimilarityMatrix& sims, double gamma, std::uint64_t seed, int restarts) {
        py::gil_scoped_release release;
        return cluster(sims, gamma, seed, restarts);
      },
      py::arg("sims"), py::arg("gamma") = 1.0, py::arg("seed") = 42, py::arg("restarts") = 10);

  m.def("fractional_date", &fractional_date, py::arg("record"));
  m.def("average_pub_date", &average_pub_date, py::arg("record_ids"), py::arg("records"));
  m.def("emerging_filter", &emerging_filter, py::arg("labels"), py::arg("scores"), py::arg("cutoff"));

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init([](const std::string& unit, std::int64_t min_occurrences, double resolution,
                       std::uint64_t seed, int restarts) {
             PipelineConfig c;
             c.unit = parse_unit_kind(unit);
             c.min_occurrences = min_occurrences;
             c.resolution = resolution;
             c.seed = seed;
             c.restarts = restarts;
             return c;
           }),
           py::arg("unit") = "keywords", py::arg("min_occurrences") = 20, py::arg("resolution") = 1.0,
           py::arg("seed") = 42, py::arg("restarts") = 10)
      .def_property_readonly("unit", [](const PipelineConfig& c) { return std::string(to_string(c.unit)); })
      .def_readwrite("min_occurrences", &PipelineConfig::min_occurrences)
      .def_readwrite("resolution", &PipelineConfig::resolution)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("restarts", &PipelineConfig::restarts);

  py::class_<PipelineResult>(m, "MapResult")
      .def_readonly("records", &PipelineResult::records)
      .def_readonly("network", &PipelineResult::network)
      .def_readonly("dropped_labels", &PipelineResult::dropped_labels)
      .def_readonly("layout", &PipelineResult::layout)
      .def_readonly("clusters", &PipelineResult::clusters)
      .def("map_file", [](const PipelineResult& r) { return to_text([&](std::ostream& o) { write_map_file(o, r.map); }); })
      .def("network_file",
           [](const PipelineResult& r) { return to_text([&](std::ostream& o) { write_network_file(o, r.map); }); })
      .def("to_json", [](const PipelineResult& r) { return write_json(r.map); });

  m.def(
      "curation_round",
      [](const std::vector<BibRecord>& records, const Thesaurus& t, const PipelineConfig& c) {
        py::gil_scoped_release release;
        return curation_round(records, t, c);
      },
      py::arg("records"), py::arg("thesaurus"), py::arg("config"));
}
