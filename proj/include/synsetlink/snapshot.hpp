#pragma once

// Offline store of synset->item mappings and item labels, persisted as two
// line-oriented TSV files:
//
//   mapping.tsv   synset<TAB>qid      (synset as NNNNNNNN-p, WordNet 3.0)
//   labels.tsv    qid<TAB>lang<TAB>label
//
// Both start with their header line, are UTF-8 with LF endings, and forbid
// tabs inside labels.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "synsetlink/identifiers.hpp"

namespace synsetlink {

struct LabelRecord {
  QId qid;
  std::string language;
  std::string label;
  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

class SnapshotError : public std::runtime_error {
 public:
  SnapshotError(const std::filesystem::path& file, std::size_t line, const std::string& what)
      : std::runtime_error(file.filename().string() + (line ? " line " + std::to_string(line) : "") + ": " + what),
        file_(file),
        line_(line) {}

  [[nodiscard]] const std::filesystem::path& file() const noexcept { return file_; }
  /// 1-based physical line; 0 for file-level errors.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::filesystem::path file_;
  std::size_t line_;
};

inline void validate_label_text(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("empty label");
  for (char c : label)
    if (c == '\t' || c == '\n' || c == '\r') throw std::invalid_argument("label contains a tab or line break");
}

class SnapshotStore {
 public:
  void add_mapping(const SynsetRef& synset, QId qid) {
    if (synset.version() != WordNetVersion::wn30)
      throw IdError(IdErrorKind::unsupported_version, synset.key(), "snapshots hold WordNet 3.0 synsets");
    mappings_[synset].insert(qid);
  }

  void add_label(const LabelRecord& record) {
    validate_label_text(record.label);
    std::string lang = parse_language_tag(record.language);
    auto [it, inserted] = labels_.try_emplace({record.qid, lang}, record.label);
    if (!inserted && it->second != record.label)
      throw std::invalid_argument("conflicting labels for " + record.qid.to_string() + "@" + lang);
  }

  /// Linked items in ascending order; empty for unlinked or unknown synsets.
  [[nodiscard]] std::vector<QId> qids_for(const SynsetRef& synset) const {
    auto it = mappings_.find(synset);
    if (it == mappings_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  [[nodiscard]] std::optional<std::string> label(const QId& qid, const std::string& language) const {
    auto it = labels_.find({qid, language});
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const std::map<SynsetRef, std::set<QId>>& mappings() const noexcept { return mappings_; }
  [[nodiscard]] const std::map<std::pair<QId, std::string>, std::string>& labels() const noexcept { return labels_; }

  [[nodiscard]] std::size_t mapping_rows() const {
    std::size_t n = 0;
    for (const auto& [_, qids] : mappings_) n += qids.size();
    return n;
  }

  friend bool operator==(const SnapshotStore&, const SnapshotStore&) = default;

 private:
  std::map<SynsetRef, std::set<QId>> mappings_;
  std::map<std::pair<QId, std::string>, std::string> labels_;
};

inline constexpr std::string_view kMappingHeader = "synset\tqid";
inline constexpr std::string_view kLabelsHeader = "qid\tlang\tlabel";

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    auto tab = line.find('\t');
    out.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return out;
}

template <class RowFn>
void read_tsv(const std::filesystem::path& path, std::string_view header, RowFn&& on_row) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(path, 0, "cannot open for reading");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != header) throw SnapshotError(path, 1, "expected header '" + std::string(header) + "'");
      continue;
    }
    if (line.empty()) continue;
    try {
      on_row(split_tabs(line));
    } catch (const SnapshotError&) {
      throw;
    } catch (const std::exception& e) {
      throw SnapshotError(path, lineno, e.what());
    }
  }
  if (lineno == 0) throw SnapshotError(path, 1, "empty file, expected header '" + std::string(header) + "'");
}

}  // namespace detail

inline void snapshot_save(const SnapshotStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto path = dir / "mapping.tsv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(path, 0, "cannot open for writing");
    out << kMappingHeader << '\n';
    for (const auto& [synset, qids] : store.mappings())
      for (const auto& q : qids) out << synset.key() << '\t' << q.to_string() << '\n';
    if (!out) throw SnapshotError(path, 0, "write failed");
  }
  {
    auto path = dir / "labels.tsv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(path, 0, "cannot open for writing");
    out << kLabelsHeader << '\n';
    for (const auto& [key, label] : store.labels()) out << key.first.to_string() << '\t' << key.second << '\t' << label << '\n';
    if (!out) throw SnapshotError(path, 0, "write failed");
  }
}

inline SnapshotStore snapshot_load(const std::filesystem::path& dir) {
  SnapshotStore store;
  detail::read_tsv(dir / "mapping.tsv", kMappingHeader, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw std::invalid_argument("expected 2 fields, got " + std::to_string(f.size()));
    store.add_mapping(parse_synset_key(f[0]), parse_qid(f[1]));
  });
  auto labels = dir / "labels.tsv";
  if (std::filesystem::exists(labels)) {
    detail::read_tsv(labels, kLabelsHeader, [&](const std::vector<std::string_view>& f) {
      if (f.size() != 3) throw std::invalid_argument("expected 3 fields, got " + std::to_string(f.size()));
      store.add_label({parse_qid(f[0]), std::string(f[1]), std::string(f[2])});
    });
  }
  return store;
}

}  // namespace synsetlink
