#pragma once

// Test-only reference implementations. Nothing here calls into the code
// paths it is used to check: the graph oracle scans the raw statements TSV
// line by line, the LRU reference is a plain ordered list.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "synsetlink/endpoint.hpp"

#ifndef SYNSETLINK_FIXTURES_DIR
#error "SYNSETLINK_FIXTURES_DIR must point at the bundled fixtures"
#endif

namespace synsetlink::testing {

inline std::filesystem::path fixtures_dir() { return SYNSETLINK_FIXTURES_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Brute-force view of fixtures/graph/statements.tsv.
class GraphOracle {
 public:
  explicit GraphOracle(const std::filesystem::path& statements = fixtures_dir() / "graph" / "statements.tsv") {
    std::ifstream in(statements);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      auto t1 = line.find('\t');
      auto t2 = line.find('\t', t1 + 1);
      rows_.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)});
    }
  }

  struct Row {
    std::string item, property, value;
  };

  [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }

  /// Items with a P2888 value under `prefix`.
  [[nodiscard]] std::set<std::string> linked_items(const std::string& prefix) const {
    std::set<std::string> out;
    for (const auto& r : rows_)
      if (r.property == "P2888" && r.value.rfind(prefix, 0) == 0) out.insert(r.item);
    return out;
  }

  /// Direct-statement count per linked item (one P2888 link per item assumed).
  [[nodiscard]] std::map<std::string, std::int64_t> statement_counts(const std::string& prefix) const {
    auto linked = linked_items(prefix);
    std::map<std::string, std::int64_t> out;
    for (const auto& r : rows_)
      if (linked.count(r.item)) ++out[r.item];
    return out;
  }

  [[nodiscard]] std::map<std::int64_t, std::int64_t> histogram(const std::string& prefix) const {
    std::map<std::int64_t, std::int64_t> bins;
    for (const auto& [_, n] : statement_counts(prefix)) ++bins[n];
    return bins;
  }

  [[nodiscard]] std::int64_t cooccurrence(const std::string& prefix) const {
    auto linked = linked_items(prefix);
    std::set<std::string> both;
    for (const auto& r : rows_)
      if (r.property == "P2581" && linked.count(r.item)) both.insert(r.item);
    return static_cast<std::int64_t>(both.size());
  }

  [[nodiscard]] std::vector<std::string> items_linking(const std::string& uri) const {
    std::vector<std::string> out;
    for (const auto& r : rows_)
      if (r.property == "P2888" && r.value == uri) out.push_back(r.item);
    return out;
  }

  [[nodiscard]] bool is_disambiguation(const std::string& item) const {
    for (const auto& r : rows_)
      if (r.item == item && r.property == "P31" && r.value == "Q4167410") return true;
    return false;
  }

 private:
  std::vector<Row> rows_;
};

/// Reference LRU: a list ordered most-recent first. Returns the evicted key
/// on put, if any.
template <class Key>
class LruReference {
 public:
  explicit LruReference(std::size_t capacity) : capacity_(capacity) {}

  bool get(const Key& k) {
    auto it = std::find(order_.begin(), order_.end(), k);
    if (it == order_.end()) return false;
    order_.erase(it);
    order_.push_front(k);
    return true;
  }

  std::optional<Key> put(const Key& k) {
    auto it = std::find(order_.begin(), order_.end(), k);
    if (it != order_.end()) {
      order_.erase(it);
      order_.push_front(k);
      return std::nullopt;
    }
    std::optional<Key> evicted;
    if (order_.size() == capacity_) {
      evicted = order_.back();
      order_.pop_back();
    }
    order_.push_front(k);
    return evicted;
  }

  [[nodiscard]] std::vector<Key> keys() const { return {order_.begin(), order_.end()}; }

 private:
  std::size_t capacity_;
  std::list<Key> order_;
};

/// Backend returning queued responses in order (the last one repeats) and
/// recording every query it sees.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<RawResponse> script) : script_(script.begin(), script.end()) {}

  RawResponse fetch(const SparqlQuery& query) override {
    std::lock_guard lock(mutex_);
    queries_.push_back(query.text);
    if (script_.size() > 1) {
      auto r = script_.front();
      script_.pop_front();
      return r;
    }
    return script_.front();
  }

  std::size_t calls() {
    std::lock_guard lock(mutex_);
    return queries_.size();
  }

  std::vector<std::string> queries() {
    std::lock_guard lock(mutex_);
    return queries_;
  }

 private:
  std::mutex mutex_;
  std::deque<RawResponse> script_;
  std::vector<std::string> queries_;
};

/// Forwards to another backend and counts calls.
class CountingBackend final : public Backend {
 public:
  explicit CountingBackend(std::shared_ptr<Backend> inner) : inner_(std::move(inner)) {}
  RawResponse fetch(const SparqlQuery& q) override {
    ++calls_;
    return inner_->fetch(q);
  }
  [[nodiscard]] std::size_t calls() const { return calls_.load(); }

 private:
  std::shared_ptr<Backend> inner_;
  std::atomic<std::size_t> calls_{0};
};

inline std::string count_body(std::int64_t n) {
  return R"({"head":{"vars":["count"]},"results":{"bindings":[{"count":{"type":"literal","datatype":"http://www.w3.org/2001/XMLSchema#integer","value":")" +
         std::to_string(n) + R"("}}]}})";
}

}  // namespace synsetlink::testing
