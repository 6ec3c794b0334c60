// Small builders shared by the unit and acceptance tests.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scimap/cooccurrence.hpp"
#include "scimap/corpus.hpp"
#include "scimap/similarity.hpp"

namespace testing_support {

inline scimap::BibRecord record(std::string id, std::initializer_list<const char*> keywords,
                                std::optional<int> year = std::nullopt,
                                std::optional<int> month = std::nullopt) {
  scimap::BibRecord r;
  r.id = std::move(id);
  for (const char* k : keywords) r.keywords.insert(k);
  r.pub_year = year;
  r.pub_month = month;
  return r;
}

/// Random symmetric similarity matrix on n nodes with edge probability p,
/// plus a spanning path when `connected` is set.
inline oracle::Matrix random_similarities(std::mt19937_64& rng, std::size_t n, double p, bool connected,
                                          double max_value = 3.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto s = oracle::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool path = connected && j == i + 1;
      if (path || u(rng) < p) s[i][j] = s[j][i] = 0.05 + max_value * u(rng);
    }
  }
  return s;
}

inline scimap::SimilarityMatrix to_sparse(const oracle::Matrix& s) {
  std::vector<scimap::SimilarityEntry> entries;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i][j] != 0.0) entries.push_back({i, j, s[i][j]});
    }
  }
  return scimap::SimilarityMatrix(s.size(), std::move(entries));
}

/// Random sparse integer co-occurrence network on n nodes. A spanning path
/// keeps every total link strength positive.
struct CountNetwork {
  oracle::Matrix counts;
  scimap::CooccurrenceNetwork network;
};

inline CountNetwork random_count_network(std::mt19937_64& rng, std::size_t n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 40);
  CountNetwork out{oracle::zeros(n), {}};
  std::vector<scimap::NetworkNode> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(1000 + i), 50, {}});
  std::vector<scimap::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || u(rng) < p) {
        const int c = count(rng);
        out.counts[i][j] = out.counts[j][i] = c;
        edges.push_back({i, j, c});
      }
    }
  }
  out.network = scimap::CooccurrenceNetwork(scimap::UnitKind::keyword, std::move(nodes), std::move(edges), 1);
  return out;
}

/// Two k-cliques with intra-clique similarity `inside`, joined by a single
/// edge (k-1, k) of similarity `bridge`.
inline oracle::Matrix two_cliques(std::size_t k, double inside, double bridge) {
  auto s = oracle::zeros(2 * k);
  for (std::size_t block = 0; block < 2; ++block) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        s[block * k + i][block * k + j] = s[block * k + j][block * k + i] = inside;
      }
    }
  }
  s[k - 1][k] = s[k][k - 1] = bridge;
  return s;
}

/// Synthetic corpus: `count` records drawing 2..6 keywords from a skewed
/// vocabulary of `vocabulary` topics, years 2000..2020, some with months.
inline std::vector<scimap::BibRecord> synthetic_corpus(std::uint64_t seed, std::size_t count,
                                                       std::size_t vocabulary) {
  std::mt19937_64 rng(seed);
  std::vector<double> weights;
  for (std::size_t k = 0; k < vocabulary; ++k) weights.push_back(1.0 / (1.0 + 0.15 * static_cast<double>(k)));
  std::discrete_distribution<std::size_t> topic(weights.begin(), weights.end());
  std::uniform_int_distribution<int> keywords(2, 6);
  std::uniform_int_distribution<int> year(2000, 2020);
  std::uniform_int_distribution<int> month(0, 12);
  std::vector<scimap::BibRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    scimap::BibRecord r;
    r.id = "syn" + std::to_string(i);
    for (int k = keywords(rng); k > 0; --k) r.keywords.insert("topic " + std::to_string(topic(rng)));
    r.pub_year = year(rng);
    if (const int m = month(rng); m > 0) r.pub_month = m;
    out.push_back(std::move(r));
  }
  return out;
}

/// Ten hand-built records exercising merge, remove-term and
/// remove-term-and-studies rules. Expected networks are worked out by hand in
/// the tests that use it.
inline std::vector<scimap::BibRecord> ten_record_corpus() {
  return {
      record("r1", {"coverage criterion", "fuzzing"}, 2010),
      record("r2", {"coverage criteria", "fuzzing"}, 2011),
      record("r3", {"coverage criterion", "coverage criteria", "mutation testing"}, 2012),
      record("r4", {"software testing"}, 2013),
      record("r5", {"software testing", "fuzzing"}, 2014),
      record("r6", {"classroom testing", "mutation testing"}, 2015),
      record("r7", {"classroom testing", "fuzzing"}, 2016),
      record("r8", {"mutation testing", "fuzzing"}, 2017),
      record("r9", {"fuzzing"}, 2018),
      record("r10", {"coverage criteria", "software testing", "mutation testing"}, 2019),
  };
}

inline constexpr const char* kTenRecordRules =
    "label\taction\ttarget\n"
    "# irrelevant topic: drop the studies too\n"
    "classroom testing\tremove_term_and_studies\n"
    "software testing\tremove_term\n"
    "coverage criterion\tmerge\tcoverage criteria\n";

}  // namespace testing_support
