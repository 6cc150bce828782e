#pragma once

// The 1,000-class ILSVRC table that maps classifier output indices to
// ImageNet synset IDs. Two input layouts are accepted:
//   TSV   index<TAB>synset<TAB>gloss (with that header line)
//   JSON  {"0": ["n01440764", "tench"], ...}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "synsetlink/identifiers.hpp"
#include "synsetlink/snapshot.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

inline constexpr std::size_t kIlsvrcClassCount = 1000;

enum class ClassIndexErrorKind { malformed, cardinality, duplicate_id, index_gap, out_of_range, unknown_id };

class ClassIndexError : public std::runtime_error {
 public:
  ClassIndexError(ClassIndexErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ClassIndexErrorKind kind() const noexcept { return kind_; }

 private:
  ClassIndexErrorKind kind_;
};

struct ClassEntry {
  std::size_t index;
  ImageNetId imagenet;
  std::string gloss;
};

class ClassIndex {
 public:
  /// Validates density, uniqueness and (unless `expected` is 0) cardinality.
  explicit ClassIndex(std::vector<ClassEntry> entries, std::size_t expected = kIlsvrcClassCount) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i].index == entries[i - 1].index)
        throw ClassIndexError(ClassIndexErrorKind::malformed, "index " + std::to_string(entries[i].index) + " appears twice");
      if (entries[i].index != i)
        throw ClassIndexError(ClassIndexErrorKind::index_gap, "no entry for index " + std::to_string(i));
      auto [it, inserted] = by_id_.emplace(entries[i].imagenet, i);
      if (!inserted)
        throw ClassIndexError(ClassIndexErrorKind::duplicate_id, entries[i].imagenet.to_string() + " appears at indices " +
                                                                     std::to_string(it->second) + " and " +
                                                                     std::to_string(i));
    }
    if (expected != 0 && entries.size() != expected)
      throw ClassIndexError(ClassIndexErrorKind::cardinality, "expected " + std::to_string(expected) +
                                                                  " classes, found " + std::to_string(entries.size()));
    entries_ = std::move(entries);
  }

  [[nodiscard]] const std::vector<ClassEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

  [[nodiscard]] const ClassEntry& at(std::size_t index) const {
    if (index >= entries_.size())
      throw ClassIndexError(ClassIndexErrorKind::out_of_range, "class index " + std::to_string(index) + " out of range 0.." +
                                                                   std::to_string(entries_.size() - 1));
    return entries_[index];
  }

  [[nodiscard]] const ImageNetId& index_to_id(std::size_t index) const { return at(index).imagenet; }

  [[nodiscard]] std::size_t id_to_index(const ImageNetId& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw ClassIndexError(ClassIndexErrorKind::unknown_id, id.to_string() + " is not in the class index");
    return it->second;
  }

  [[nodiscard]] bool contains(const ImageNetId& id) const { return by_id_.contains(id); }

 private:
  std::vector<ClassEntry> entries_;
  std::map<ImageNetId, std::size_t> by_id_;
};

namespace detail {

inline std::size_t parse_class_number(std::string_view text) {
  auto n = parse_int64(text);
  if (!n || *n < 0) throw ClassIndexError(ClassIndexErrorKind::malformed, "bad class index '" + std::string(text) + "'");
  return static_cast<std::size_t>(*n);
}

}  // namespace detail

inline ClassIndex parse_class_index_tsv(std::string_view text, std::size_t expected = kIlsvrcClassCount) {
  std::vector<ClassEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line == "index\tsynset\tgloss") continue;
    if (line.empty()) continue;
    auto f = detail::split_tabs(line);
    if (f.size() != 3)
      throw ClassIndexError(ClassIndexErrorKind::malformed, "line " + std::to_string(lineno) + ": expected 3 fields");
    try {
      entries.push_back({detail::parse_class_number(f[0]), parse_imagenet_id(f[1]), std::string(f[2])});
    } catch (const IdError& e) {
      throw ClassIndexError(ClassIndexErrorKind::malformed, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return ClassIndex(std::move(entries), expected);
}

inline ClassIndex parse_class_index_json(std::string_view text, std::size_t expected = kIlsvrcClassCount) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ClassIndexError(ClassIndexErrorKind::malformed, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ClassIndexError(ClassIndexErrorKind::malformed, "class index JSON must be an object");
  std::vector<ClassEntry> entries;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_string() || !value[1].is_string())
      throw ClassIndexError(ClassIndexErrorKind::malformed, "entry \"" + key + "\" must be [synset, gloss]");
    try {
      entries.push_back({detail::parse_class_number(key), parse_imagenet_id(value[0].get<std::string>()),
                         value[1].get<std::string>()});
    } catch (const IdError& e) {
      throw ClassIndexError(ClassIndexErrorKind::malformed, "entry \"" + key + "\": " + e.what());
    }
  }
  return ClassIndex(std::move(entries), expected);
}

/// Picks the layout from the first non-blank character.
inline ClassIndex parse_class_index(std::string_view text, std::size_t expected = kIlsvrcClassCount) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_class_index_json(text, expected);
  return parse_class_index_tsv(text, expected);
}

inline ClassIndex load_class_index(const std::filesystem::path& path, std::size_t expected = kIlsvrcClassCount) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ClassIndexError(ClassIndexErrorKind::malformed, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_class_index(buf.str(), expected);
}

}  // namespace synsetlink
