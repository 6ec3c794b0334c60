#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace scimap {

/// One publication as exported by a bibliographic database.
struct BibRecord {
  std::string id;  // DOI, or the 1-based data-row number when no DOI is present
  std::string title;
  std::vector<std::string> authors;  // as listed, not canonicalized
  std::vector<std::string> affiliations;
  std::set<std::string> countries;
  std::set<std::string> keywords;  // canonical labels
  std::optional<int> pub_year;
  std::optional<int> pub_month;  // 1..12
  std::string venue;
  std::int64_t citations = 0;

  bool operator==(const BibRecord&) const = default;
};

enum class UnitKind { keyword, author, country };

const char* to_string(UnitKind kind);
/// Accepts "keyword(s)", "author(s)", "country"/"countries".
UnitKind parse_unit_kind(std::string_view text);

/// Lowercase, trim, collapse inner whitespace runs to one space.
/// An empty result marks a label that should be dropped.
std::string canonicalize_label(std::string_view raw);

/// Maps canonical place names (current and historical) to a canonical
/// modern country name.
class Gazetteer {
 public:
  /// The bundled table: ISO country names plus common aliases and
  /// historical names ("west germany" -> "germany").
  static const Gazetteer& bundled();

  /// Reads "alias\tcountry" lines; '#' starts a comment line.
  static Gazetteer from_tsv(std::istream& in);

  void add(std::string_view alias, std::string_view country);
  std::optional<std::string> lookup(std::string_view place) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

/// Column names for each record role. Empty optional roles are ignored.
struct CorpusSchema {
  std::string authors = "Authors";
  std::string keywords = "Author Keywords";
  std::string year = "Year";
  std::string affiliations = "Affiliations";
  std::string title = "Title";
  std::string citations = "Cited by";
  std::string doi = "DOI";
  std::string venue = "Source title";
  std::string month;  // not present in standard exports

  char keyword_delimiter = ';';
  char author_delimiter = ';';
  char affiliation_delimiter = ';';
};

struct ParseOptions {
  bool strict = false;  // first malformed row aborts the parse
  const Gazetteer* gazetteer = nullptr;  // nullptr -> bundled
};

struct ParseWarning {
  std::size_t row = 0;  // 1-based data-row number (header is row 0)
  std::string message;
};

struct ParseResult {
  std::vector<BibRecord> records;
  std::size_t skipped_no_keywords = 0;
  std::size_t malformed_rows = 0;
  std::vector<ParseWarning> warnings;
};

/// Parses an RFC-4180 CSV export with a header row.
/// Throws Error{MissingColumn} when a required role (authors, keywords, year,
/// affiliations) has no header, and Error{MalformedRow} in strict mode.
ParseResult parse_corpus(std::istream& csv, const CorpusSchema& schema = {},
                         const ParseOptions& options = {});
ParseResult parse_corpus(std::string_view csv, const CorpusSchema& schema = {},
                         const ParseOptions& options = {});

/// Country set for a list of affiliation strings: the last comma-separated
/// segment of each, looked up in the gazetteer. Unmatched tails are appended
/// to `unmatched` when given.
std::set<std::string> derive_countries(const std::vector<std::string>& affiliations,
                                       const Gazetteer& gazetteer,
                                       std::vector<std::string>* unmatched = nullptr);

/// Distinct units of `kind` in `record`; each occurs at most once.
std::set<std::string> extract_units(const BibRecord& record, UnitKind kind);

// Corpus cache: newline-delimited JSON, one record per line.
void write_corpus_cache(std::ostream& out, const std::vector<BibRecord>& records);
std::vector<BibRecord> read_corpus_cache(std::istream& in);

}  // namespace scimap
