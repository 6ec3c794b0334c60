#include "scimap/thesaurus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scimap/error.hpp"

namespace scimap {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

RuleAction parse_action(const std::string& raw, std::size_t line_no) {
  const auto action = canonicalize_label(raw);
  if (action == "merge") return RuleAction::merge;
  if (action == "remove_term") return RuleAction::remove_term;
  if (action == "remove_term_and_studies") return RuleAction::remove_term_and_studies;
  throw Error(ErrorKind::UnknownAction,
              "line " + std::to_string(line_no) + ": unknown action '" + raw + "'");
}

}  // namespace

const char* to_string(RuleAction action) {
  switch (action) {
    case RuleAction::merge: return "merge";
    case RuleAction::remove_term: return "remove_term";
    case RuleAction::remove_term_and_studies: return "remove_term_and_studies";
  }
  return "?";
}

CleanupReport& CleanupReport::operator+=(const CleanupReport& other) {
  merged_labels += other.merged_labels;
  removed_terms += other.removed_terms;
  removed_records += other.removed_records;
  rounds += other.rounds;
  return *this;
}

void Thesaurus::add(ThesaurusRule rule) {
  rule.label = canonicalize_label(rule.label);
  if (rule.label.empty()) {
    throw Error(ErrorKind::InvalidArgument, "thesaurus rule with empty label");
  }
  if (rule.action == RuleAction::merge) {
    rule.target = canonicalize_label(rule.target);
    if (rule.target.empty()) {
      throw Error(ErrorKind::InvalidArgument, "merge rule for '" + rule.label + "' has no target");
    }
  } else {
    rule.target.clear();
  }
  if (rules_.contains(rule.label)) {
    throw Error(ErrorKind::DuplicateRuleForLabel, "duplicate rule for '" + rule.label + "'");
  }
  if (rule.action == RuleAction::merge) {
    // Walking forward from the target must not come back to the label.
    std::string cursor = rule.target;
    for (std::size_t steps = 0; steps <= rules_.size(); ++steps) {
      if (cursor == rule.label) {
        throw Error(ErrorKind::CyclicMerge, "merge of '" + rule.label + "' into '" +
                                                rule.target + "' closes a cycle");
      }
      const auto it = rules_.find(cursor);
      if (it == rules_.end() || it->second.action != RuleAction::merge) break;
      cursor = it->second.target;
    }
  }
  auto label = rule.label;
  rules_.emplace(std::move(label), std::move(rule));
}

void Thesaurus::add_all(const std::vector<ThesaurusRule>& rules) {
  Thesaurus staged = *this;
  for (const auto& r : rules) staged.add(r);
  *this = std::move(staged);
}

const ThesaurusRule* Thesaurus::find(std::string_view label) const {
  const auto it = rules_.find(label);
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<ThesaurusRule> Thesaurus::rules() const {
  std::vector<ThesaurusRule> out;
  out.reserve(rules_.size());
  for (const auto& [_, rule] : rules_) out.push_back(rule);
  return out;
}

std::optional<ThesaurusRule> Thesaurus::resolve(std::string_view label) const {
  const ThesaurusRule* rule = find(label);
  if (rule == nullptr) return std::nullopt;
  const ThesaurusRule* cursor = rule;
  while (cursor->action == RuleAction::merge) {
    const ThesaurusRule* next = find(cursor->target);
    if (next == nullptr) {
      return ThesaurusRule{rule->label, RuleAction::merge, cursor->target};
    }
    cursor = next;
  }
  return ThesaurusRule{rule->label, cursor->action, {}};
}

std::vector<ThesaurusRule> parse_thesaurus_rules(std::string_view tsv) {
  std::vector<ThesaurusRule> rules;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto cols = split_tabs(line);
    if (canonicalize_label(cols[0]) == "label" && cols.size() >= 2 &&
        canonicalize_label(cols[1]) == "action") {
      continue;  // header
    }
    if (cols.size() < 2 || cols.size() > 3) {
      throw Error(ErrorKind::SchemaMismatch,
                  "line " + std::to_string(line_no) + ": expected label<TAB>action[<TAB>target]");
    }
    ThesaurusRule rule;
    rule.label = canonicalize_label(cols[0]);
    rule.action = parse_action(cols[1], line_no);
    if (cols.size() == 3) rule.target = canonicalize_label(cols[2]);
    if (rule.action == RuleAction::merge && rule.target.empty()) {
      throw Error(ErrorKind::SchemaMismatch,
                  "line " + std::to_string(line_no) + ": merge rule without target");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

Thesaurus parse_thesaurus(std::string_view tsv) {
  Thesaurus thesaurus;
  thesaurus.add_all(parse_thesaurus_rules(tsv));
  return thesaurus;
}

Thesaurus parse_thesaurus(std::istream& tsv) {
  std::ostringstream buffer;
  buffer << tsv.rdbuf();
  return parse_thesaurus(buffer.str());
}

void write_thesaurus(std::ostream& out, const Thesaurus& thesaurus) {
  out << "label\taction\ttarget\n";
  for (const auto& rule : thesaurus.rules()) {
    out << rule.label << '\t' << to_string(rule.action) << '\t' << rule.target << '\n';
  }
}

namespace {

// Rewrites one set-valued unit field. Returns false when the record must be
// dropped entirely.
bool rewrite_label_set(std::set<std::string>& labels, const Thesaurus& thesaurus,
                       CleanupReport& report) {
  std::vector<std::string> merge_targets;
  std::size_t merged = 0;
  std::size_t removed = 0;
  for (auto it = labels.begin(); it != labels.end();) {
    const auto effective = thesaurus.resolve(*it);
    if (!effective) {
      ++it;
      continue;
    }
    switch (effective->action) {
      case RuleAction::remove_term_and_studies:
        return false;
      case RuleAction::remove_term:
        ++removed;
        it = labels.erase(it);
        break;
      case RuleAction::merge:
        ++merged;
        merge_targets.push_back(effective->target);
        it = labels.erase(it);
        break;
    }
  }
  labels.insert(merge_targets.begin(), merge_targets.end());
  report.removed_terms += removed;
  report.merged_labels += merged;
  return true;
}

bool rewrite_authors(std::vector<std::string>& authors, const Thesaurus& thesaurus,
                     CleanupReport& report) {
  bool merged_any = false;
  std::vector<std::string> kept;
  kept.reserve(authors.size());
  std::size_t merged = 0;
  std::size_t removed = 0;
  for (auto& raw : authors) {
    const auto effective = thesaurus.resolve(canonicalize_label(raw));
    if (!effective) {
      kept.push_back(std::move(raw));
      continue;
    }
    switch (effective->action) {
      case RuleAction::remove_term_and_studies:
        return false;
      case RuleAction::remove_term:
        ++removed;
        break;
      case RuleAction::merge:
        ++merged;
        merged_any = true;
        kept.push_back(effective->target);
        break;
    }
  }
  if (merged_any) {
    std::set<std::string> seen;
    std::erase_if(kept, [&](const std::string& a) { return !seen.insert(canonicalize_label(a)).second; });
  }
  authors = std::move(kept);
  report.removed_terms += removed;
  report.merged_labels += merged;
  return true;
}

}  // namespace

CleanupResult apply_thesaurus(const std::vector<BibRecord>& records, const Thesaurus& thesaurus,
                              UnitKind kind) {
  CleanupResult result;
  result.report.rounds = 1;
  result.records.reserve(records.size());
  for (const auto& original : records) {
    BibRecord rec = original;
    bool keep = true;
    switch (kind) {
      case UnitKind::keyword:
        keep = rewrite_label_set(rec.keywords, thesaurus, result.report) && !rec.keywords.empty();
        break;
      case UnitKind::author:
        keep = rewrite_authors(rec.authors, thesaurus, result.report);
        break;
      case UnitKind::country:
        keep = rewrite_label_set(rec.countries, thesaurus, result.report);
        break;
    }
    if (keep) {
      result.records.push_back(std::move(rec));
    } else {
      ++result.report.removed_records;
    }
  }
  return result;
}

}  // namespace scimap
