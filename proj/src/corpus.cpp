#include "scimap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "scimap/error.hpp"

namespace scimap {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// RFC-4180 reader. A row is malformed when a quoted field is followed by
// anything but a delimiter or line end, or when the input ends inside quotes.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  struct Row {
    std::vector<std::string> fields;
    bool malformed = false;
    std::string problem;
  };

  bool next(Row& row) {
    row.fields.clear();
    row.malformed = false;
    row.problem.clear();
    if (in_.peek() == std::char_traits<char>::eof()) return false;

    std::string field;
    enum class State { field_start, unquoted, quoted, quote_in_quoted, after_bad_quote };
    State state = State::field_start;
    for (;;) {
      const int ci = in_.get();
      if (ci == std::char_traits<char>::eof()) {
        if (state == State::quoted) {
          row.malformed = true;
          row.problem = "unterminated quoted field";
        }
        row.fields.push_back(std::move(field));
        return true;
      }
      const char c = static_cast<char>(ci);
      switch (state) {
        case State::field_start:
          if (c == '"') {
            state = State::quoted;
            break;
          }
          state = State::unquoted;
          [[fallthrough]];
        case State::unquoted:
        case State::after_bad_quote:
          if (c == ',') {
            row.fields.push_back(std::move(field));
            field.clear();
            state = State::field_start;
          } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in_.peek() == '\n') in_.get();
            row.fields.push_back(std::move(field));
            return true;
          } else {
            field.push_back(c);
          }
          break;
        case State::quoted:
          if (c == '"') {
            state = State::quote_in_quoted;
          } else {
            field.push_back(c);
          }
          break;
        case State::quote_in_quoted:
          if (c == '"') {
            field.push_back('"');
            state = State::quoted;
          } else if (c == ',') {
            row.fields.push_back(std::move(field));
            field.clear();
            state = State::field_start;
          } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in_.peek() == '\n') in_.get();
            row.fields.push_back(std::move(field));
            return true;
          } else {
            row.malformed = true;
            row.problem = "unexpected character after closing quote";
            field.push_back(c);
            state = State::after_bad_quote;
          }
          break;
      }
    }
  }

 private:
  std::istream& in_;
};

std::string canonical_country_key(std::string_view raw) {
  std::string key = canonicalize_label(raw);
  // "U.S.A." and "USA" should match the same alias.
  key.erase(std::remove(key.begin(), key.end(), '.'), key.end());
  return key;
}

}  // namespace

const char* to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::keyword: return "keywords";
    case UnitKind::author: return "authors";
    case UnitKind::country: return "countries";
  }
  return "?";
}

UnitKind parse_unit_kind(std::string_view text) {
  if (text == "keyword" || text == "keywords") return UnitKind::keyword;
  if (text == "author" || text == "authors") return UnitKind::author;
  if (text == "country" || text == "countries") return UnitKind::country;
  throw Error(ErrorKind::InvalidArgument, "unknown unit kind '" + std::string(text) + "'");
}

std::string canonicalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

Gazetteer Gazetteer::from_tsv(std::istream& in) {
  Gazetteer g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto parts = split(view, '\t');
    if (parts.size() != 2) {
      throw Error(ErrorKind::SchemaMismatch,
                  "gazetteer line " + std::to_string(line_no) + ": expected alias<TAB>country");
    }
    g.add(parts[0], parts[1]);
  }
  return g;
}

void Gazetteer::add(std::string_view alias, std::string_view country) {
  auto key = canonical_country_key(alias);
  auto value = canonicalize_label(country);
  if (key.empty() || value.empty()) return;
  table_.insert_or_assign(std::move(key), std::move(value));
}

std::optional<std::string> Gazetteer::lookup(std::string_view place) const {
  const auto it = table_.find(canonical_country_key(place));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> derive_countries(const std::vector<std::string>& affiliations,
                                       const Gazetteer& gazetteer,
                                       std::vector<std::string>* unmatched) {
  std::set<std::string> countries;
  for (const auto& affiliation : affiliations) {
    std::string_view tail = affiliation;
    if (const auto comma = tail.rfind(','); comma != std::string_view::npos) {
      tail = tail.substr(comma + 1);
    }
    tail = trim(tail);
    if (tail.empty()) continue;
    if (auto country = gazetteer.lookup(tail)) {
      countries.insert(std::move(*country));
    } else if (unmatched != nullptr) {
      unmatched->emplace_back(tail);
    }
  }
  return countries;
}

ParseResult parse_corpus(std::string_view csv, const CorpusSchema& schema,
                         const ParseOptions& options) {
  std::istringstream in{std::string(csv)};
  return parse_corpus(in, schema, options);
}

ParseResult parse_corpus(std::istream& csv, const CorpusSchema& schema,
                         const ParseOptions& options) {
  const Gazetteer& gazetteer = options.gazetteer ? *options.gazetteer : Gazetteer::bundled();
  ParseResult result;
  CsvReader reader(csv);
  CsvReader::Row row;
  if (!reader.next(row)) {
    throw Error(ErrorKind::MissingColumn, "input has no header row");
  }
  if (!row.fields.empty() && row.fields[0].starts_with("\xEF\xBB\xBF")) {
    row.fields[0].erase(0, 3);  // UTF-8 BOM
  }
  std::unordered_map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < row.fields.size(); ++i) {
    columns.emplace(std::string(trim(row.fields[i])), i);
  }
  const std::size_t header_width = row.fields.size();

  auto required = [&](const std::string& name, const char* role) {
    const auto it = columns.find(name);
    if (name.empty() || it == columns.end()) {
      throw Error(ErrorKind::MissingColumn,
                  std::string("no column '") + name + "' for role " + role);
    }
    return it->second;
  };
  auto optional = [&](const std::string& name) -> std::optional<std::size_t> {
    if (name.empty()) return std::nullopt;
    const auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };

  const auto col_authors = required(schema.authors, "authors");
  const auto col_keywords = required(schema.keywords, "keywords");
  const auto col_year = required(schema.year, "year");
  const auto col_affiliations = required(schema.affiliations, "affiliations");
  const auto col_title = optional(schema.title);
  const auto col_citations = optional(schema.citations);
  const auto col_doi = optional(schema.doi);
  const auto col_venue = optional(schema.venue);
  const auto col_month = optional(schema.month);

  std::size_t row_no = 0;
  while (reader.next(row)) {
    ++row_no;
    if (row.fields.size() == 1 && trim(row.fields[0]).empty() && !row.malformed) {
      continue;  // blank line
    }
    if (!row.malformed && row.fields.size() != header_width) {
      row.malformed = true;
      row.problem = "expected " + std::to_string(header_width) + " fields, found " +
                    std::to_string(row.fields.size());
    }
    if (row.malformed) {
      if (options.strict) {
        throw Error(ErrorKind::MalformedRow,
                    "row " + std::to_string(row_no) + ": " + row.problem);
      }
      ++result.malformed_rows;
      result.warnings.push_back({row_no, "malformed row skipped: " + row.problem});
      continue;
    }
    const auto& f = row.fields;
    auto cell = [&](std::optional<std::size_t> col) -> std::string_view {
      return col ? std::string_view(f[*col]) : std::string_view{};
    };

    BibRecord rec;
    for (const auto part : split(f[col_keywords], schema.keyword_delimiter)) {
      auto label = canonicalize_label(part);
      if (!label.empty()) rec.keywords.insert(std::move(label));
    }
    if (rec.keywords.empty()) {
      ++result.skipped_no_keywords;
      continue;
    }

    const auto doi = trim(cell(col_doi));
    rec.id = doi.empty() ? std::to_string(row_no) : std::string(doi);
    rec.title = std::string(trim(cell(col_title)));
    rec.venue = std::string(trim(cell(col_venue)));
    for (const auto part : split(f[col_authors], schema.author_delimiter)) {
      const auto name = trim(part);
      if (!name.empty()) rec.authors.emplace_back(name);
    }
    for (const auto part : split(f[col_affiliations], schema.affiliation_delimiter)) {
      const auto aff = trim(part);
      if (!aff.empty()) rec.affiliations.emplace_back(aff);
    }
    std::vector<std::string> unmatched;
    rec.countries = derive_countries(rec.affiliations, gazetteer, &unmatched);
    for (const auto& tail : unmatched) {
      result.warnings.push_back({row_no, "unknown country '" + tail + "' dropped"});
    }

    if (const auto year = parse_int(f[col_year]); year && *year >= 1900 && *year <= 2100) {
      rec.pub_year = static_cast<int>(*year);
    } else if (!trim(f[col_year]).empty()) {
      result.warnings.push_back({row_no, "unparseable year '" + f[col_year] + "'"});
    }
    if (const auto month = parse_int(cell(col_month)); month && *month >= 1 && *month <= 12) {
      rec.pub_month = static_cast<int>(*month);
    }
    if (const auto cites = parse_int(cell(col_citations)); cites && *cites >= 0) {
      rec.citations = *cites;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::set<std::string> extract_units(const BibRecord& record, UnitKind kind) {
  switch (kind) {
    case UnitKind::keyword:
      return record.keywords;
    case UnitKind::author: {
      std::set<std::string> names;
      for (const auto& a : record.authors) {
        auto name = canonicalize_label(a);
        if (!name.empty()) names.insert(std::move(name));
      }
      return names;
    }
    case UnitKind::country:
      return record.countries;
  }
  return {};
}

void write_corpus_cache(std::ostream& out, const std::vector<BibRecord>& records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["authors"] = r.authors;
    j["affiliations"] = r.affiliations;
    j["countries"] = r.countries;
    j["keywords"] = r.keywords;
    j["pub_year"] = r.pub_year ? nlohmann::ordered_json(*r.pub_year) : nullptr;
    j["pub_month"] = r.pub_month ? nlohmann::ordered_json(*r.pub_month) : nullptr;
    j["venue"] = r.venue;
    j["citations"] = r.citations;
    out << j.dump() << '\n';
  }
}

std::vector<BibRecord> read_corpus_cache(std::istream& in) {
  std::vector<BibRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      BibRecord r;
      r.id = j.at("id").get<std::string>();
      r.title = j.at("title").get<std::string>();
      r.authors = j.at("authors").get<std::vector<std::string>>();
      r.affiliations = j.at("affiliations").get<std::vector<std::string>>();
      r.countries = j.at("countries").get<std::set<std::string>>();
      r.keywords = j.at("keywords").get<std::set<std::string>>();
      if (!j.at("pub_year").is_null()) r.pub_year = j["pub_year"].get<int>();
      if (!j.at("pub_month").is_null()) r.pub_month = j["pub_month"].get<int>();
      r.venue = j.at("venue").get<std::string>();
      r.citations = j.at("citations").get<std::int64_t>();
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::SchemaMismatch,
                  "corpus cache line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace scimap
