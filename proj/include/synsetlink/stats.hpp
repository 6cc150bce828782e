#pragma once

// Linkage statistics over the items that carry a WordNet P2888 link.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synsetlink/endpoint.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

struct ItemStatementCount {
  QId qid;
  std::int64_t count;
  friend bool operator==(const ItemStatementCount&, const ItemStatementCount&) = default;
};

/// Frequency of per-item statement counts.
class StatementHistogram {
 public:
  void add_bin(std::int64_t count, std::int64_t frequency) {
    if (count < 0 || frequency < 0) throw std::invalid_argument("histogram bins must be non-negative");
    if (!bins_.emplace(count, frequency).second)
      throw std::invalid_argument("duplicate histogram bin for count " + std::to_string(count));
    total_ += frequency;
  }

  [[nodiscard]] const std::map<std::int64_t, std::int64_t>& bins() const noexcept { return bins_; }
  [[nodiscard]] std::int64_t total_items() const noexcept { return total_; }

  /// Most frequent statement count; ties go to the smaller count.
  [[nodiscard]] std::optional<std::int64_t> mode() const {
    std::optional<std::int64_t> best;
    std::int64_t best_freq = -1;
    for (const auto& [count, freq] : bins_) {
      if (freq > best_freq) {
        best = count;
        best_freq = freq;
      }
    }
    return best;
  }

  friend bool operator==(const StatementHistogram&, const StatementHistogram&) = default;

 private:
  std::map<std::int64_t, std::int64_t> bins_;
  std::int64_t total_ = 0;
};

namespace detail {

inline std::int64_t single_count(Endpoint& endpoint, const SparqlQuery& query) {
  auto rows = endpoint.execute(query);
  if (rows.size() != 1)
    throw EndpointError(EndpointErrorKind::malformed_body,
                        "count query returned " + std::to_string(rows.size()) + " rows, expected 1");
  return rows.front().integer("count");
}

}  // namespace detail

inline std::int64_t count_linked(Endpoint& endpoint, std::string_view prefix = kWordNet30Prefix) {
  return detail::single_count(endpoint, build_count_linked_query(prefix));
}

/// Per-item statement counts, ascending by count then by item.
inline std::vector<ItemStatementCount> statement_counts(Endpoint& endpoint, std::string_view prefix = kWordNet30Prefix) {
  std::vector<ItemStatementCount> out;
  for (const auto& row : endpoint.execute(build_statement_counts_query(prefix))) {
    ItemStatementCount item{row.qid("item"), row.integer("count")};
    if (item.count < 1)
      throw EndpointError(EndpointErrorKind::malformed_body,
                          item.qid.to_string() + " has statement count " + std::to_string(item.count));
    out.push_back(item);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count < b.count : a.qid < b.qid;
  });
  return out;
}

inline StatementHistogram histogram(Endpoint& endpoint, std::string_view prefix = kWordNet30Prefix) {
  StatementHistogram h;
  for (const auto& row : endpoint.execute(build_histogram_query(prefix))) {
    try {
      h.add_bin(row.integer("count"), row.integer("frequency"));
    } catch (const std::invalid_argument& e) {
      throw EndpointError(EndpointErrorKind::malformed_body, e.what());
    }
  }
  return h;
}

inline std::int64_t babelnet_usage(Endpoint& endpoint) {
  return detail::single_count(endpoint, build_babelnet_count_query());
}

inline std::int64_t cooccurrence(Endpoint& endpoint, std::string_view prefix = kWordNet30Prefix) {
  return detail::single_count(endpoint, build_cooccurrence_query(prefix));
}

/// Items with at most `threshold` statements, ascending by QId.
inline std::vector<QId> low_statement_items(std::span<const ItemStatementCount> counts, std::int64_t threshold) {
  if (threshold < 0) throw std::invalid_argument("threshold must be >= 0");
  std::vector<QId> out;
  for (const auto& c : counts)
    if (c.count <= threshold) out.push_back(c.qid);
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::string_view kHistogramCsvHeader = "count,frequency";

inline std::string format_histogram_csv(const StatementHistogram& h) {
  std::string out(kHistogramCsvHeader);
  out += '\n';
  for (const auto& [count, freq] : h.bins()) out += std::to_string(count) + "," + std::to_string(freq) + "\n";
  return out;
}

inline void emit_histogram_csv(const StatementHistogram& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_histogram_csv(h);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline StatementHistogram parse_histogram_csv(std::string_view text) {
  StatementHistogram h;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != kHistogramCsvHeader) throw std::invalid_argument("histogram CSV: bad header");
      continue;
    }
    if (line.empty()) continue;
    auto comma = line.find(',');
    auto count = comma == std::string::npos ? std::nullopt : detail::parse_int64(std::string_view(line).substr(0, comma));
    auto freq = comma == std::string::npos ? std::nullopt : detail::parse_int64(std::string_view(line).substr(comma + 1));
    if (!count || !freq) throw std::invalid_argument("histogram CSV line " + std::to_string(lineno) + ": malformed");
    h.add_bin(*count, *freq);
  }
  return h;
}

}  // namespace synsetlink
