// Acceptance run: one PASS/FAIL line per criterion, against the bundled
// fixture store. Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "support/oracles.hpp"
#include "synsetlink/audit.hpp"
#include "synsetlink/fixture_backend.hpp"
#include "synsetlink/ilsvrc.hpp"
#include "synsetlink/service.hpp"
#include "synsetlink/stats.hpp"

using namespace synsetlink;
using namespace std::chrono_literals;
using synsetlink::testing::fixtures_dir;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

template <class A, class B>
void require_eq(const A& actual, const B& expected, const std::string& what) {
  if (!(actual == expected)) {
    std::ostringstream s;
    s << what << ": got " << actual << ", expected " << expected;
    throw Failure(s.str());
  }
}

std::shared_ptr<Endpoint> fixture_endpoint() {
  return std::make_shared<Endpoint>(EndpointConfig::for_fixtures(), std::make_shared<FixtureBackend>(fixtures_dir()));
}

std::string golden(const std::string& name) {
  return canonicalize_whitespace(synsetlink::testing::read_file(fixtures_dir() / "queries" / (name + ".rq")));
}

void golden_queries() {
  require(canonicalize_whitespace(build_count_linked_query().text) == golden("count_linked"), "count listing");
  require(canonicalize_whitespace(build_statement_counts_query().text) == golden("statement_counts"),
          "statement count listing");
  require(canonicalize_whitespace(build_histogram_query().text) == golden("histogram"), "histogram listing");
  auto uri = parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/04033901-n");
  require(canonicalize_whitespace(build_inverse_mapping_query(uri).text) == golden("inverse_mapping"),
          "inverse mapping query");
}

void fixture_statistics() {
  auto ep = fixture_endpoint();
  require_eq(count_linked(*ep), 324, "stats count");
  require_eq(cooccurrence(*ep), 105, "cooccurrence");
  require_eq(babelnet_usage(*ep), 59105, "babelnet");
  auto h = histogram(*ep);
  require(h.mode().has_value(), "histogram is empty");
  require_eq(*h.mode(), 9, "histogram mode");
  require_eq(h.total_items(), 324, "histogram frequency sum");
}

void resolution_fixtures() {
  Resolver resolver(fixture_endpoint());
  auto quill = resolver.resolve_synset(parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/04033901-n"));
  require(quill.qids == std::vector<QId>{QId(4063215)}, "04033901-n does not resolve to Q4063215 alone");
  auto mash = resolver.resolve_synset(parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/07711569-n"));
  require(mash.qids == std::vector<QId>{QId(322787)}, "07711569-n does not resolve to Q322787 alone");
}

void identifier_properties() {
  constexpr char letters[] = {'n', 'v', 'a', 's', 'r'};
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> offset(1, kMaxOffset);
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    char text[16];
    std::snprintf(text, sizeof text, "%c%08u", letters[rng() % 5], offset(rng));
    auto id = parse_imagenet_id(text);
    auto uri = imagenet_to_uri(id);
    if (id.to_string() != text || uri_to_imagenet(parse_wordnet_uri(uri.to_string())) != id) ++failures;
  }
  require_eq(failures, 0, "round-trip failures");

  const char* segments[] = {"wn30", "pwn30", "wn31", "pwn31"};
  for (int i = 0; i < 10'000; ++i) {
    int seg = static_cast<int>(rng() % 4);
    std::string lead = seg >= 2 && rng() % 2 ? std::to_string(rng() % 10) : "";
    char text[96];
    std::snprintf(text, sizeof text, "http://wordnet-rdf.princeton.edu/%s/%s%08u-%c", segments[seg], lead.c_str(),
                  offset(rng), letters[rng() % 5]);
    auto uri = parse_wordnet_uri(text);
    for (auto style : {UriStyle::legacy, UriStyle::canonical}) {
      auto once = normalize_uri(uri, style);
      if (normalize_uri(once, style) != once || parse_wordnet_uri(once.to_string()) != once) ++failures;
    }
  }
  require_eq(failures, 0, "normalization idempotence failures");
}

void cache_properties() {
  // Single fetch.
  auto backend = std::make_shared<synsetlink::testing::CountingBackend>(std::make_shared<FixtureBackend>(fixtures_dir()));
  auto ep = std::make_shared<Endpoint>(EndpointConfig::for_fixtures(), backend);
  Resolver resolver(ep);
  resolver.resolve_synset(parse_imagenet_id("n04033901"));
  auto before = backend->calls();
  resolver.resolve_synset(parse_imagenet_id("n04033901"));
  require_eq(backend->calls() - before, 0u, "endpoint calls on second resolve");

  // LRU trace against the list oracle.
  std::mt19937 rng(2);
  for (int seq = 0; seq < 1000; ++seq) {
    std::size_t capacity = 1 + rng() % 8;
    LruCache<int, int> cache(capacity);
    synsetlink::testing::LruReference<int> ref(capacity);
    std::vector<int> evicted, ref_evicted;
    cache.on_evict([&](const int& k) { evicted.push_back(k); });
    for (int op = 0; op < 200; ++op) {
      int key = static_cast<int>(rng() % (capacity * 2 + 1));
      if (rng() % 2) {
        require(cache.get(key).has_value() == ref.get(key), "hit/miss diverges from oracle");
      } else {
        if (auto v = ref.put(key)) ref_evicted.push_back(*v);
        cache.put(key, key);
      }
      require(cache.keys() == ref.keys(), "recency order diverges from oracle");
    }
    require(evicted == ref_evicted, "eviction trace diverges from oracle");
  }

  // TTL under a virtual clock.
  auto clock = std::make_shared<VirtualClock>();
  LruCache<std::string, int> ttl_cache(4, 30s, clock);
  ttl_cache.put("k", 1);
  clock->advance(30s);
  require(ttl_cache.get("k").has_value(), "entry expired at exactly ttl");
  clock->advance(1s);
  require(!ttl_cache.get("k").has_value(), "entry survived past ttl");
}

void audit_criterion() {
  auto records = load_match_table(fixtures_dir() / "audit" / "table1.tsv");
  require_eq(records.size(), 7u, "table records");
  auto report = audit_report(records);
  std::size_t sum = 0;
  for (auto s : kAllMatchStatuses) sum += report.counts.at(s);
  require_eq(sum, records.size(), "status counts sum");

  auto ep = fixture_endpoint();
  Resolver resolver(ep);
  auto suspects = load_match_table(fixtures_dir() / "audit" / "suspects.tsv");
  auto flags = flag_suspect_matches(suspects, *ep, resolver);
  require_eq(flags.size(), 2u, "flagged records");
  require(flags[0].record.imagenet.to_string() == "n03775546" && flags[0].reason == SuspectReason::disambiguation,
          "seeded disambiguation record not flagged");
  require(flags[1].record.imagenet.to_string() == "n04392985" && flags[1].reason == SuspectReason::divergent,
          "seeded divergent record not flagged");
}

void ilsvrc_criterion() {
  auto classes = load_class_index(fixtures_dir() / "ilsvrc" / "classes.tsv");
  require_eq(classes.size(), 1000u, "class count");
  for (std::size_t i = 0; i < classes.size(); ++i)
    require(classes.id_to_index(classes.index_to_id(i)) == i, "index/id maps are not inverse");
  auto banana = parse_imagenet_id("n07753592");
  require(classes.contains(banana), "banana missing");
  require(classes.at(classes.id_to_index(banana)).gloss == "banana", "banana gloss");
}

void service_contract() {
  Resolver resolver(fixture_endpoint());
  LabelService service(resolver);
  httplib::Server server;
  service.mount(server);
  int port = server.bind_to_any_port("127.0.0.1");
  require(port > 0, "cannot bind");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  struct Stop {
    httplib::Server& s;
    std::thread& t;
    ~Stop() {
      s.stop();
      t.join();
    }
  } stop{server, t};

  httplib::Client client("127.0.0.1", port);
  auto first = client.Get("/v1/label?synset=n07711569&lang=en");
  require(first && first->status == 200, "mashed potato request failed");
  auto body = nlohmann::json::parse(first->body);
  require(body["qid"] == "Q322787", "mashed potato qid");
  require(body["cache"] == "miss", "first request should miss");
  auto bad = client.Get("/v1/label?synset=banana");
  require(bad && bad->status == 400, "malformed synset should be 400");
  auto again = client.Get("/v1/label?synset=n07711569&lang=en");
  require(again && nlohmann::json::parse(again->body)["cache"] == "hit", "repeat request should hit");
}

struct Criterion {
  const char* name;
  std::optional<std::chrono::milliseconds> limit;
  std::function<void()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"golden queries", 1000ms, golden_queries},
      {"fixture statistics", 5000ms, fixture_statistics},
      {"resolution fixtures", std::nullopt, resolution_fixtures},
      {"identifier properties", 10'000ms, identifier_properties},
      {"cache properties", 30'000ms, cache_properties},
      {"audit", std::nullopt, audit_criterion},
      {"ilsvrc class index", std::nullopt, ilsvrc_criterion},
      {"service contract", std::nullopt, service_contract},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    if (detail.empty() && c.limit && ms >= *c.limit)
      detail = "took " + std::to_string(ms.count()) + " ms, limit " + std::to_string(c.limit->count()) + " ms";
    bool ok = detail.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name << "  (" << ms.count() << " ms";
    if (c.limit) std::cout << " / limit " << c.limit->count() << " ms";
    std::cout << ")";
    if (!ok) std::cout << "  " << detail;
    std::cout << '\n';
  }
  return failed;
}
