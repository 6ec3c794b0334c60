#include "scimap/pipeline.hpp"

#include "scimap/similarity.hpp"

namespace scimap {

LayoutConfig layout_config(const PipelineConfig& config) {
  LayoutConfig lc;
  lc.seed = config.seed;
  lc.restarts = config.restarts;
  lc.max_iterations = config.max_iterations;
  lc.rel_tolerance = config.rel_tolerance;
  lc.jitter_epsilon = config.jitter_epsilon;
  return lc;
}

ItemMap assemble_map(const CooccurrenceNetwork& network, const Layout& layout,
                     const ClusterAssignment& clusters, const OverlayScores& overlay,
                     const PipelineConfig& config) {
  ItemMap map;
  map.config = config;
  map.nodes.reserve(network.size());
  for (std::size_t i = 0; i < network.size(); ++i) {
    MapNode node;
    node.id = static_cast<int>(i + 1);
    node.label = network.nodes()[i].label;
    node.x = layout.positions[i].x;
    node.y = layout.positions[i].y;
    node.cluster = clusters.assignment[i];
    node.occurrences = network.nodes()[i].occurrences;
    node.links = static_cast<std::int64_t>(network.degree(i));
    node.total_link_strength = network.strength(i);
    node.avg_pub_date = overlay.scores[i];
    map.nodes.push_back(std::move(node));
  }
  for (const auto& e : network.edges()) {
    map.edges.push_back({static_cast<int>(e.a + 1), static_cast<int>(e.b + 1), e.weight});
  }
  return map;
}

PipelineResult curation_round(const std::vector<BibRecord>& corpus, const Thesaurus& thesaurus,
                              const PipelineConfig& config, bool record_layout_log) {
  PipelineResult result;
  auto cleaned = apply_thesaurus(corpus, thesaurus, config.unit);
  result.records = std::move(cleaned.records);
  result.report = cleaned.report;

  const auto full = build_network(result.records, config.unit, config.min_occurrences);
  auto component = largest_component(full);
  result.network = std::move(component.network);
  result.dropped_labels = std::move(component.dropped);

  if (result.network.size() == 1) {
    result.layout.positions = {Point{}};
    result.layout.converged = true;
    result.layout.seed = config.seed;
    result.clusters.assignment = {1};
    result.clusters.gamma = config.resolution;
    result.clusters.seed = config.seed;
  } else {
    const auto sims = association_strength(result.network);
    auto lc = layout_config(config);
    lc.record_log = record_layout_log;
    result.layout = optimize_layout(sims, lc);
    result.clusters = cluster(sims, config.resolution, config.seed, config.restarts);
  }
  result.overlay = overlay_scores(result.network, result.records);
  result.map = assemble_map(result.network, result.layout, result.clusters, result.overlay, config);
  return result;
}

}  // namespace scimap
