#include <sstream>

#include <gtest/gtest.h>

#include "../support.hpp"
#include "scimap/error.hpp"
#include "scimap/pipeline.hpp"

namespace scimap {
namespace {

using testing_support::kTenRecordRules;
using testing_support::record;
using testing_support::ten_record_corpus;

PipelineConfig small_config() {
  PipelineConfig config;
  config.min_occurrences = 1;
  return config;
}

TEST(CurationRound, TenRecordCorpusAfterRules) {
  const auto result =
      curation_round(ten_record_corpus(), parse_thesaurus(std::string_view(kTenRecordRules)), small_config());
  EXPECT_EQ(result.records.size(), 7u);
  ASSERT_EQ(result.map.nodes.size(), 3u);
  const auto& cc = result.map.nodes[0];
  EXPECT_EQ(cc.label, "coverage criteria");
  EXPECT_EQ(cc.occurrences, 4);
  EXPECT_EQ(cc.links, 2);
  EXPECT_EQ(cc.total_link_strength, 4);
  // r1 2010, r2 2011, r3 2012, r10 2019, all mid-year.
  EXPECT_EQ(cc.avg_pub_date, (2010.5 + 2011.5 + 2012.5 + 2019.5) / 4.0);
  EXPECT_EQ(result.map.edges.size(), 3u);
  EXPECT_NEAR(mean_pairwise_distance(result.layout.positions), 1.0, 1e-9);
  EXPECT_TRUE(result.dropped_labels.empty());
}

TEST(CurationRound, DropsSmallerComponents) {
  const std::vector<BibRecord> corpus = {record("1", {"a", "b"}, 2000), record("2", {"b", "c"}, 2001),
                                         record("3", {"x", "y"}, 2002)};
  const auto result = curation_round(corpus, {}, small_config());
  EXPECT_EQ(result.map.nodes.size(), 3u);
  EXPECT_EQ(result.dropped_labels, (std::vector<std::string>{"x", "y"}));
}

TEST(CurationRound, SingleNodeMap) {
  const auto result = curation_round({record("1", {"solo"}, 2000)}, {}, small_config());
  ASSERT_EQ(result.map.nodes.size(), 1u);
  EXPECT_EQ(result.map.nodes[0].cluster, 1);
  EXPECT_EQ(result.map.nodes[0].x, 0.0);
}

TEST(CurationRound, ByteIdenticalAcrossRuns) {
  const auto thesaurus = parse_thesaurus(std::string_view(kTenRecordRules));
  auto render = [&] {
    const auto r = curation_round(ten_record_corpus(), thesaurus, small_config());
    std::ostringstream out;
    write_map_file(out, r.map);
    write_network_file(out, r.map);
    return out.str() + write_json(r.map);
  };
  EXPECT_EQ(render(), render());
}

TEST(CurationRound, AuthorUnit) {
  std::vector<BibRecord> corpus = {record("1", {"k"}), record("2", {"k"})};
  corpus[0].authors = {"Doe J.", "Roe R."};
  corpus[1].authors = {"doe j.", "Poe P."};
  auto config = small_config();
  config.unit = UnitKind::author;
  const auto result = curation_round(corpus, {}, config);
  ASSERT_EQ(result.map.nodes.size(), 3u);
  EXPECT_EQ(result.map.nodes[0].label, "doe j.");
  EXPECT_EQ(result.map.nodes[0].occurrences, 2);
}

TEST(CurationRound, PropagatesEmptyNetwork) {
  auto config = small_config();
  config.min_occurrences = 7;
  EXPECT_THROW(curation_round(ten_record_corpus(), {}, config), Error);
}

}  // namespace
}  // namespace scimap
