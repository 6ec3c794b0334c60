#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "scimap/corpus.hpp"

namespace scimap {

enum class RuleAction { merge, remove_term, remove_term_and_studies };

const char* to_string(RuleAction action);

struct ThesaurusRule {
  std::string label;
  RuleAction action = RuleAction::remove_term;
  std::string target;  // merge only

  bool operator==(const ThesaurusRule&) const = default;
};

struct CleanupReport {
  std::size_t merged_labels = 0;    // (record, label) replacements
  std::size_t removed_terms = 0;    // (record, label) deletions
  std::size_t removed_records = 0;
  std::size_t rounds = 0;

  CleanupReport& operator+=(const CleanupReport& other);
};

/// A validated rule set: at most one rule per label, merge graph acyclic.
class Thesaurus {
 public:
  Thesaurus() = default;

  /// Validates and adds. Throws Error{DuplicateRuleForLabel} or
  /// Error{CyclicMerge}; on throw the set is unchanged.
  void add(ThesaurusRule rule);
  void add_all(const std::vector<ThesaurusRule>& rules);

  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }
  const ThesaurusRule* find(std::string_view label) const;
  std::vector<ThesaurusRule> rules() const;  // sorted by label

  /// What finally happens to `label`: merge chains are followed to their
  /// terminal label, and a terminal that is itself removed passes its removal
  /// on to every label merged into it. nullopt when no rule touches `label`.
  std::optional<ThesaurusRule> resolve(std::string_view label) const;

 private:
  std::map<std::string, ThesaurusRule, std::less<>> rules_;
};

/// Tab-separated "label\taction\ttarget"; the header line and '#' comments
/// are optional. Throws Error{UnknownAction|DuplicateRuleForLabel|CyclicMerge}
/// or Error{SchemaMismatch} for a line with the wrong column count.
Thesaurus parse_thesaurus(std::istream& tsv);
Thesaurus parse_thesaurus(std::string_view tsv);
std::vector<ThesaurusRule> parse_thesaurus_rules(std::string_view tsv);

void write_thesaurus(std::ostream& out, const Thesaurus& thesaurus);

struct CleanupResult {
  std::vector<BibRecord> records;
  CleanupReport report;
};

/// Removals are applied before merges. Idempotent.
/// For keywords, a record whose keyword set becomes empty is dropped. For
/// authors and countries, remove_term only deletes the label.
CleanupResult apply_thesaurus(const std::vector<BibRecord>& records, const Thesaurus& thesaurus,
                              UnitKind kind = UnitKind::keyword);

}  // namespace scimap
