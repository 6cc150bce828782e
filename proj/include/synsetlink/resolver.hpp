#pragma once

// Synset -> Wikidata item -> localized label, with LRU caching of both
// lookups. The data source is either a SPARQL endpoint or an offline
// snapshot. Empty answers are cached too, and concurrent misses on the same
// key share a single fetch.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synsetlink/endpoint.hpp"
#include "synsetlink/identifiers.hpp"
#include "synsetlink/lru_cache.hpp"
#include "synsetlink/snapshot.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

enum class ResolutionSource { cache, endpoint, snapshot };

inline std::string_view to_string(ResolutionSource s) {
  switch (s) {
    case ResolutionSource::cache: return "cache";
    case ResolutionSource::endpoint: return "endpoint";
    case ResolutionSource::snapshot: return "snapshot";
  }
  return "unknown";
}

struct Resolution {
  SynsetRef synset;
  std::vector<QId> qids;  // ascending
  ResolutionSource source;
};

struct LabeledResolution {
  ImageNetId synset;
  std::optional<QId> qid;
  std::optional<LabelRecord> label;
  bool multiplicity = false;  // more than one item links to the synset
  bool cache_hit = false;     // answered without touching the data source
};

struct ResolverOptions {
  std::size_t capacity = 1024;
  std::chrono::seconds ttl{0};
};

namespace detail {

struct LabelKey {
  QId qid;
  std::string language;
  friend bool operator==(const LabelKey&, const LabelKey&) = default;
};

struct LabelKeyHash {
  std::size_t operator()(const LabelKey& k) const noexcept {
    return std::hash<QId>{}(k.qid) * 31 + std::hash<std::string>{}(k.language);
  }
};

/// Runs at most one producer per key at a time; concurrent callers for the
/// same key wait for and share the leader's result (or exception).
template <class Key, class Value, class Hash = std::hash<Key>>
class Coalescer {
 public:
  template <class Fn>
  Value run(const Key& key, Fn&& produce) {
    std::unique_lock lock(mutex_);
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      auto shared = it->second;
      lock.unlock();
      return shared.get();
    }
    std::promise<Value> promise;
    inflight_.emplace(key, promise.get_future().share());
    lock.unlock();

    try {
      Value value = produce();
      promise.set_value(value);
      erase(key);
      return value;
    } catch (...) {
      promise.set_exception(std::current_exception());
      erase(key);
      throw;
    }
  }

 private:
  void erase(const Key& key) {
    std::lock_guard lock(mutex_);
    inflight_.erase(key);
  }

  std::mutex mutex_;
  std::unordered_map<Key, std::shared_future<Value>, Hash> inflight_;
};

}  // namespace detail

class Resolver {
 public:
  Resolver(std::shared_ptr<Endpoint> endpoint, ResolverOptions options = {},
           std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>())
      : endpoint_(std::move(endpoint)),
        synsets_(options.capacity, options.ttl, clock),
        labels_(options.capacity, options.ttl, clock) {
    if (!endpoint_) throw std::invalid_argument("resolver needs an endpoint");
  }

  Resolver(std::shared_ptr<const SnapshotStore> snapshot, ResolverOptions options = {},
           std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>())
      : snapshot_(std::move(snapshot)),
        synsets_(options.capacity, options.ttl, clock),
        labels_(options.capacity, options.ttl, clock) {
    if (!snapshot_) throw std::invalid_argument("resolver needs a snapshot");
  }

  Resolver(const Resolver&) = delete;
  Resolver& operator=(const Resolver&) = delete;

  Resolution resolve_synset(const ImageNetId& id) { return resolve_synset(imagenet_to_uri(id)); }

  /// Items whose P2888 points at the synset's WordNet 3.0 URI. Canonical
  /// (pwn30) URIs are looked up under their legacy form.
  Resolution resolve_synset(const WordNetUri& uri) {
    if (uri.version() != WordNetVersion::wn30)
      throw IdError(IdErrorKind::unsupported_version, uri.to_string(), "only WordNet 3.0 synsets are linked");
    WordNetUri legacy = normalize_uri(uri, UriStyle::legacy);
    std::string key = legacy.to_string();

    if (auto cached = synsets_.get(key)) return {legacy.synset(), std::move(*cached), ResolutionSource::cache};

    auto [qids, source] = synset_fetches_.run(key, [&]() -> std::pair<std::vector<QId>, ResolutionSource> {
      if (auto cached = synsets_.peek(key)) return {std::move(*cached), ResolutionSource::cache};
      std::vector<QId> found = fetch_qids(legacy);
      synsets_.put(key, found);
      return {std::move(found), data_source()};
    });
    return {legacy.synset(), std::move(qids), source};
  }

  /// First label found along [language] + fallback. Every (qid, tag) pair
  /// consulted is cached, including absent ones.
  std::optional<LabelRecord> get_label(const QId& qid, std::string_view language,
                                       std::span<const std::string> fallback = {}) {
    return lookup_label(qid, language, fallback).first;
  }

  /// resolve_synset followed by get_label on the smallest linked item.
  LabeledResolution resolve_and_label(const ImageNetId& id, std::string_view language,
                                      std::span<const std::string> fallback = {}) {
    Resolution res = resolve_synset(id);
    LabeledResolution out{id, std::nullopt, std::nullopt, false, res.source == ResolutionSource::cache};
    if (res.qids.empty()) return out;
    out.qid = res.qids.front();
    out.multiplicity = res.qids.size() > 1;
    auto [label, label_cached] = lookup_label(*out.qid, language, fallback);
    out.label = std::move(label);
    out.cache_hit = out.cache_hit && label_cached;
    return out;
  }

  /// Combined counters of the synset and label caches.
  [[nodiscard]] CacheStats cache_stats() const {
    CacheStats s = synsets_.stats();
    s += labels_.stats();
    return s;
  }

  [[nodiscard]] const std::shared_ptr<Endpoint>& endpoint() const noexcept { return endpoint_; }
  [[nodiscard]] const std::shared_ptr<const SnapshotStore>& snapshot() const noexcept { return snapshot_; }

 private:
  ResolutionSource data_source() const { return endpoint_ ? ResolutionSource::endpoint : ResolutionSource::snapshot; }

  std::vector<QId> fetch_qids(const WordNetUri& legacy) {
    std::vector<QId> qids;
    if (endpoint_) {
      for (const auto& row : endpoint_->execute(build_inverse_mapping_query(legacy))) qids.push_back(row.qid("item"));
    } else {
      qids = snapshot_->qids_for(legacy.synset());
    }
    std::sort(qids.begin(), qids.end());
    qids.erase(std::unique(qids.begin(), qids.end()), qids.end());
    return qids;
  }

  std::optional<std::string> fetch_label(const QId& qid, const std::string& tag) {
    if (!endpoint_) return snapshot_->label(qid, tag);
    std::vector<std::string> langs{tag};
    for (const auto& row : endpoint_->execute(build_label_query(qid, langs))) {
      if (row.text("lang") == tag) return row.text("label");
    }
    return std::nullopt;
  }

  std::pair<std::optional<LabelRecord>, bool> lookup_label(const QId& qid, std::string_view language,
                                                           std::span<const std::string> fallback) {
    std::vector<std::string> chain{parse_language_tag(language)};
    for (const auto& f : fallback) {
      auto tag = parse_language_tag(f);
      if (std::find(chain.begin(), chain.end(), tag) == chain.end()) chain.push_back(std::move(tag));
    }

    bool all_cached = true;
    for (const auto& tag : chain) {
      detail::LabelKey key{qid, tag};
      std::optional<std::string> label;
      if (auto cached = labels_.get(key)) {
        label = std::move(*cached);
      } else {
        all_cached = false;
        label = label_fetches_.run(key, [&]() -> std::optional<std::string> {
          if (auto cached = labels_.peek(key)) return *cached;
          auto found = fetch_label(qid, tag);
          labels_.put(key, found);
          return found;
        });
      }
      if (label) return {LabelRecord{qid, tag, std::move(*label)}, all_cached};
    }
    return {std::nullopt, all_cached};
  }

  std::shared_ptr<Endpoint> endpoint_;
  std::shared_ptr<const SnapshotStore> snapshot_;
  LruCache<std::string, std::vector<QId>> synsets_;
  LruCache<detail::LabelKey, std::optional<std::string>, detail::LabelKeyHash> labels_;
  detail::Coalescer<std::string, std::pair<std::vector<QId>, ResolutionSource>> synset_fetches_;
  detail::Coalescer<detail::LabelKey, std::optional<std::string>, detail::LabelKeyHash> label_fetches_;
};

}  // namespace synsetlink
