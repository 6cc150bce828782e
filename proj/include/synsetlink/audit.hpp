#pragma once

// Curated ImageNet <-> Wikidata match tables and the audit report over them.
//
// Match-table TSV columns:
//   imagenet  wordnet  qid  candidates  status  note
// `qid` may be empty; `candidates` is a comma-separated QId list, empty or
// "-" when there are none.

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synsetlink/endpoint.hpp"
#include "synsetlink/identifiers.hpp"
#include "synsetlink/resolver.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

enum class MatchStatus {
  matched,
  missing_from_wikidata,
  disambiguation_page,
  imagenet_wordnet_discrepancy,
  concept_mismatch,
  multiple_candidates,
  unreviewed,
};

inline constexpr std::array<MatchStatus, 7> kAllMatchStatuses = {
    MatchStatus::matched,           MatchStatus::missing_from_wikidata,
    MatchStatus::disambiguation_page, MatchStatus::imagenet_wordnet_discrepancy,
    MatchStatus::concept_mismatch,  MatchStatus::multiple_candidates,
    MatchStatus::unreviewed};

inline std::string_view to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::matched: return "matched";
    case MatchStatus::missing_from_wikidata: return "missing_from_wikidata";
    case MatchStatus::disambiguation_page: return "disambiguation_page";
    case MatchStatus::imagenet_wordnet_discrepancy: return "imagenet_wordnet_discrepancy";
    case MatchStatus::concept_mismatch: return "concept_mismatch";
    case MatchStatus::multiple_candidates: return "multiple_candidates";
    case MatchStatus::unreviewed: return "unreviewed";
  }
  return "unknown";
}

inline std::optional<MatchStatus> parse_match_status(std::string_view text) {
  for (auto s : kAllMatchStatuses)
    if (to_string(s) == text) return s;
  return std::nullopt;
}

struct MatchRecord {
  ImageNetId imagenet;
  WordNetUri wordnet;
  std::optional<QId> qid;
  std::vector<QId> candidates;
  MatchStatus status;
  std::string note;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

class AuditError : public std::runtime_error {
 public:
  AuditError(std::size_t line, const std::string& what)
      : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Throws std::invalid_argument naming the violated invariant.
inline void validate_record(const MatchRecord& r) {
  if (r.status == MatchStatus::matched && !r.qid) throw std::invalid_argument("status matched requires a qid");
  if (r.status == MatchStatus::missing_from_wikidata && r.qid)
    throw std::invalid_argument("status missing_from_wikidata forbids a qid");
  if (r.status == MatchStatus::multiple_candidates && r.candidates.size() < 2)
    throw std::invalid_argument("status multiple_candidates requires at least two candidates");
  if (r.wordnet.version() != WordNetVersion::wn30) throw std::invalid_argument("wordnet URI must be WordNet 3.0");
  if (uri_to_imagenet(r.wordnet) != r.imagenet)
    throw std::invalid_argument("wordnet URI " + r.wordnet.to_string() + " does not match " + r.imagenet.to_string());
  for (char c : r.note)
    if (c == '\t' || c == '\n' || c == '\r') throw std::invalid_argument("note contains a tab or line break");
}

inline constexpr std::string_view kMatchTableHeader = "imagenet\twordnet\tqid\tcandidates\tstatus\tnote";

namespace detail {

inline std::vector<QId> parse_candidates(std::string_view text) {
  std::vector<QId> out;
  if (text.empty() || text == "-" || text == "\xE2\x80\x94") return out;  // em dash as written in worksheets
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(parse_qid(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline std::vector<MatchRecord> parse_match_table(std::string_view text) {
  std::vector<MatchRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != kMatchTableHeader) throw AuditError(1, "expected header '" + std::string(kMatchTableHeader) + "'");
      continue;
    }
    if (line.empty()) continue;
    auto f = detail::split_tabs(line);
    if (f.size() != 6) throw AuditError(lineno, "expected 6 fields, got " + std::to_string(f.size()));
    try {
      auto status = parse_match_status(f[4]);
      if (!status) throw std::invalid_argument("unknown status '" + std::string(f[4]) + "'");
      MatchRecord r{parse_imagenet_id(f[0]),
                    parse_wordnet_uri(f[1]),
                    f[2].empty() ? std::nullopt : std::optional<QId>(parse_qid(f[2])),
                    detail::parse_candidates(f[3]),
                    *status,
                    std::string(f[5])};
      validate_record(r);
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw AuditError(lineno, e.what());
    }
  }
  if (lineno == 0) throw AuditError(1, "empty match table");
  return records;
}

inline std::vector<MatchRecord> load_match_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_match_table(buf.str());
}

inline std::string format_match_table(const std::vector<MatchRecord>& records) {
  std::string out(kMatchTableHeader);
  out += '\n';
  for (const auto& r : records) {
    validate_record(r);
    std::string cands;
    for (const auto& c : r.candidates) cands += (cands.empty() ? "" : ",") + c.to_string();
    out += r.imagenet.to_string() + '\t' + r.wordnet.to_string() + '\t' + (r.qid ? r.qid->to_string() : "") + '\t' +
           cands + '\t' + std::string(to_string(r.status)) + '\t' + r.note + '\n';
  }
  return out;
}

inline void save_match_table(const std::vector<MatchRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw AuditError(0, "cannot write " + path.string());
  out << format_match_table(records);
}

struct AuditReport {
  std::map<MatchStatus, std::size_t> counts;                // every status present, zero included
  std::map<MatchStatus, std::vector<MatchRecord>> listings;  // sorted by ImageNet id
  std::size_t total = 0;
};

inline AuditReport audit_report(const std::vector<MatchRecord>& records) {
  AuditReport report;
  for (auto s : kAllMatchStatuses) report.counts[s] = 0;
  for (const auto& r : records) {
    ++report.counts[r.status];
    report.listings[r.status].push_back(r);
  }
  for (auto& [_, list] : report.listings)
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.imagenet < b.imagenet; });
  report.total = records.size();
  return report;
}

/// `status<TAB>count` for every status, in taxonomy order.
inline std::string format_report_tsv(const AuditReport& report) {
  std::string out = "status\tcount\n";
  for (auto s : kAllMatchStatuses) out += std::string(to_string(s)) + '\t' + std::to_string(report.counts.at(s)) + '\n';
  return out;
}

inline std::string format_report_text(const AuditReport& report) {
  std::ostringstream out;
  out << "Match audit: " << report.total << " records\n";
  for (auto s : kAllMatchStatuses) {
    std::size_t n = report.counts.at(s);
    out << "  " << to_string(s) << ": " << n << '\n';
    if (auto it = report.listings.find(s); it != report.listings.end()) {
      for (const auto& r : it->second) {
        out << "    " << r.imagenet.to_string() << "  " << (r.qid ? r.qid->to_string() : "-");
        if (!r.note.empty()) out << "  " << r.note;
        out << '\n';
      }
    }
  }
  return out.str();
}

inline bool check_disambiguation(Endpoint& endpoint, const QId& qid) {
  auto rows = endpoint.execute(build_disambiguation_query(qid));
  if (rows.size() != 1)
    throw EndpointError(EndpointErrorKind::malformed_body, "disambiguation check returned " + std::to_string(rows.size()) + " rows");
  return rows.front().integer("count") > 0;
}

enum class SuspectReason { disambiguation, divergent };

inline std::string_view to_string(SuspectReason r) {
  return r == SuspectReason::disambiguation ? "disambiguation" : "divergent";
}

struct SuspectMatch {
  MatchRecord record;
  SuspectReason reason;
};

/// Flags records whose item is a disambiguation page, and matched records
/// whose recorded item is no longer among the items the synset resolves to.
/// A record can be flagged for both reasons.
inline std::vector<SuspectMatch> flag_suspect_matches(const std::vector<MatchRecord>& records, Endpoint& endpoint,
                                                      Resolver& resolver) {
  std::vector<SuspectMatch> out;
  for (const auto& r : records) {
    if (r.qid && check_disambiguation(endpoint, *r.qid)) out.push_back({r, SuspectReason::disambiguation});
    if (r.status == MatchStatus::matched && r.qid) {
      auto res = resolver.resolve_synset(r.wordnet);
      if (std::find(res.qids.begin(), res.qids.end(), *r.qid) == res.qids.end())
        out.push_back({r, SuspectReason::divergent});
    }
  }
  return out;
}

}  // namespace synsetlink
