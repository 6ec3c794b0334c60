#pragma once

#include <string>
#include <vector>

#include "scimap/clustering.hpp"
#include "scimap/cooccurrence.hpp"
#include "scimap/corpus.hpp"
#include "scimap/layout.hpp"
#include "scimap/map_io.hpp"
#include "scimap/overlay.hpp"
#include "scimap/thesaurus.hpp"

namespace scimap {

struct PipelineResult {
  ItemMap map;
  std::vector<BibRecord> records;  // after the thesaurus
  CleanupReport report;
  CooccurrenceNetwork network;  // largest component, index-aligned with map.nodes
  std::vector<std::string> dropped_labels;
  Layout layout;
  ClusterAssignment clusters;
  OverlayScores overlay;
};

LayoutConfig layout_config(const PipelineConfig& config);

/// Thesaurus -> network -> largest component -> association strength ->
/// layout -> clustering -> overlay scores. Deterministic for fixed inputs.
PipelineResult curation_round(const std::vector<BibRecord>& corpus, const Thesaurus& thesaurus,
                              const PipelineConfig& config, bool record_layout_log = false);

/// The ItemMap for an already built network and its per-stage results.
ItemMap assemble_map(const CooccurrenceNetwork& network, const Layout& layout,
                     const ClusterAssignment& clusters, const OverlayScores& overlay,
                     const PipelineConfig& config);

}  // namespace scimap
