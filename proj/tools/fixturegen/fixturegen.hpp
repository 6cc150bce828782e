#pragma once

// Builds the bundled fixture store: a small synthetic Wikidata graph whose
// aggregate figures match the published snapshot (324 linked items, mode
// of 9 statements, 105 BabelNet co-links), plus the recorded response for
// every query the toolkit issues against it.
//
// Items with known Wikidata counterparts keep their real QIDs. Every other item gets a
// synthetic QID from Q90000000 upward so fixtures never pose as live data.
//
// Output layout under `out`:
//   graph/statements.tsv   item<TAB>property<TAB>value  (the whole graph)
//   graph/labels.tsv       qid<TAB>lang<TAB>label
//   responses/<sha256>.json
//   snapshot/{mapping,labels}.tsv

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "synsetlink/fixture_backend.hpp"
#include "synsetlink/identifiers.hpp"
#include "synsetlink/ilsvrc.hpp"
#include "synsetlink/snapshot.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink::fixturegen {

inline constexpr std::int64_t kBabelNetUsage = 59105;
inline constexpr std::uint64_t kSyntheticBase = 90'000'000;
inline constexpr std::uint64_t kNamedSyntheticBase = 90'100'000;
inline const std::vector<std::string> kRecordedLanguages = {"en", "da", "xx"};

struct Statement {
  std::string property;
  std::string value;
};

struct Item {
  QId qid;
  std::optional<SynsetRef> synset;  // P2888 target, WordNet 3.0
  std::int64_t statements = 0;      // total direct statements, P2888 included
  std::vector<Statement> fixed;     // statements besides P2888 that must be present
  bool babelnet = false;
  bool disambiguation = false;
  std::map<std::string, std::string> labels;
};

struct Graph {
  std::vector<Item> items;  // linked items first, in construction order
};

namespace detail {

inline QId synthetic(std::uint64_t n) { return QId(kSyntheticBase + n); }
inline QId named_synthetic(std::uint64_t n) { return QId(kNamedSyntheticBase + n); }

inline SynsetRef noun(std::uint32_t offset) { return SynsetRef(PartOfSpeech::noun, offset); }

inline std::string first_lemma(const std::string& gloss) { return gloss.substr(0, gloss.find(',')); }

// Generic filler properties. P31 is left out so only seeded items are
// instances of the disambiguation class; P2581 is only added on purpose.
inline const std::vector<std::string>& filler_properties() {
  static const std::vector<std::string> props = {
      "P279", "P373", "P646", "P18",   "P910",  "P8408", "P227",  "P244",  "P349",  "P508",
      "P950", "P1014", "P1051", "P1245", "P2347", "P3417", "P3827", "P4212", "P5008", "P6366",
      "P7807", "P1417", "P2924", "P3219", "P3365", "P3916", "P5437", "P6573", "P8814", "P10"};
  return props;
}

}  // namespace detail

/// Filler statement-count distribution (count -> number of filler items).
/// Together with the named items this yields 324 items and a mode of 9.
inline const std::vector<std::pair<std::int64_t, int>>& filler_distribution() {
  static const std::vector<std::pair<std::int64_t, int>> dist = {
      {4, 6},   {5, 10},  {6, 16}, {7, 25}, {8, 30}, {9, 36}, {10, 30}, {11, 27}, {12, 22}, {13, 18}, {14, 15}, {15, 12},
      {16, 10}, {17, 8},  {18, 7}, {19, 6}, {20, 5}, {22, 4}, {25, 3},  {30, 3},  {35, 2},  {40, 2},  {50, 1}};
  return dist;
}

inline Graph build_graph(const ClassIndex& classes) {
  using detail::named_synthetic;
  using detail::noun;
  Graph g;
  auto add = [&](QId qid, std::optional<SynsetRef> synset, std::int64_t statements, std::string en) -> Item& {
    Item item{qid, synset, statements, {}, false, false, {}};
    item.labels["en"] = std::move(en);
    g.items.push_back(std::move(item));
    return g.items.back();
  };

  // Items with known QIDs, and the hand-placed synthetic ones.
  add(QId(4063215), noun(4033901), 12, "quill").babelnet = true;
  g.items.back().fixed.push_back({"P2581", "00065709n"});
  {
    auto& it = add(QId(322787), noun(7711569), 15, "mashed potato");
    it.babelnet = true;
    it.labels["da"] = "kartoffelmos";
  }
  {
    auto& it = add(QId(1890958), noun(3868863), 5, "oxygen mask");
    it.fixed = {{"P373", "Oxygen masks"}, {"P646", "/m/02p0b4"}, {"P3417", "Oxygen-Masks"}, {"P3827", "oxygen-masks"}};
  }
  add(QId(4165197), noun(3692522), 2, "loupe").fixed = {{"P373", "Loupes"}};
  add(QId(4869069), noun(3742115), 3, "bathroom cabinet");
  add(named_synthetic(1), noun(3131574), 3, "cradle");
  add(QId(1736293), noun(4152593), 3, "cathode ray tube screen");
  add(named_synthetic(2), noun(3937543), 2, "pill bottle");
  add(named_synthetic(3), noun(2808440), 3, "bath towel");
  {
    auto& it = add(QId(144), noun(2084071), 112, "dog");
    it.babelnet = true;
    it.labels["da"] = "hund";
  }
  add(named_synthetic(4), noun(1614925), 104, "bald eagle").babelnet = true;
  add(named_synthetic(5), noun(1443537), 101, "goldfish").babelnet = true;
  add(named_synthetic(6), noun(3337140), 9, "filing cabinet");
  add(named_synthetic(7), noun(2107312), 9, "Miniature Pinscher");
  add(named_synthetic(8), noun(4380533), 9, "table lamp");
  add(named_synthetic(9), noun(3124170), 9, "cowboy hat");
  add(QId(368027), noun(4355933), 6, "burning glass");
  add(QId(25503439), noun(2738535), 7, "armchair");
  add(named_synthetic(10), noun(3775546), 4, "mixing bowl").disambiguation = true;
  add(named_synthetic(11), noun(2965783), 4, "car mirror").disambiguation = true;
  // Two items claiming the same synset.
  add(named_synthetic(12), noun(3724870), 8, "mask");
  add(named_synthetic(13), noun(3724870), 8, "mask");
  {
    auto& it = add(named_synthetic(14), noun(3063599), 10, "coffee mug");
    it.labels["da"] = "kaffekrus";
  }
  {
    auto& it = add(named_synthetic(15), noun(4554684), 11, "washing machine");
    it.labels["da"] = "vaskemaskine";
  }
  {
    auto& it = add(named_synthetic(16), noun(7753592), 13, "banana");
    it.labels["da"] = "banan";
  }
  add(named_synthetic(17), noun(4392985), 6, "tape player");

  // Deliberately unlinked Table 1 synsets.
  std::set<SynsetRef> used;
  for (const auto& it : g.items)
    if (it.synset) used.insert(*it.synset);
  for (std::uint32_t off : {7930864u, 7565083u, 3832673u, 3944341u}) used.insert(noun(off));

  // Fillers: the next unused ILSVRC classes in index order.
  std::vector<std::int64_t> counts;
  for (const auto& [count, n] : filler_distribution())
    for (int i = 0; i < n; ++i) counts.push_back(count);

  std::size_t next_class = 0;
  int babelnet_fillers = 0;
  int babelnet_named = 0;
  for (const auto& it : g.items) babelnet_named += it.babelnet ? 1 : 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    while (used.contains(classes.entries().at(next_class).imagenet.synset())) ++next_class;
    const auto& entry = classes.entries().at(next_class++);
    auto& it = add(detail::synthetic(k + 1), entry.imagenet.synset(), counts[k], detail::first_lemma(entry.gloss));
    if (babelnet_named + babelnet_fillers < 105) {
      it.babelnet = true;
      ++babelnet_fillers;
    }
  }

  // Unlinked items referenced by the match tables and label examples.
  add(QId(3962), std::nullopt, 40, "laptop").labels["da"] = "bærbar computer";
  add(QId(1121224), std::nullopt, 20, "punch");
  add(QId(658274), std::nullopt, 10, "menu");
  add(QId(5290), std::nullopt, 30, "computer monitor");
  add(QId(6021804), std::nullopt, 15, "electronic visual display");
  add(QId(1969455), std::nullopt, 12, "street sign");
  add(QId(170285), std::nullopt, 25, "traffic sign");
  add(named_synthetic(18), std::nullopt, 5, "tape recorder");
  return g;
}

/// Expands an item into its full statement list.
inline std::vector<Statement> statements_of(const Item& item) {
  std::vector<Statement> out;
  if (item.synset) out.push_back({"P2888", WordNetUri(*item.synset, UriStyle::legacy).to_string()});
  for (const auto& s : item.fixed) out.push_back(s);
  bool has_babelnet = std::any_of(out.begin(), out.end(), [](const auto& s) { return s.property == "P2581"; });
  if (item.babelnet && !has_babelnet) out.push_back({"P2581", std::to_string(item.qid.number() % 100000000) + "n"});
  if (item.disambiguation) out.push_back({"P31", std::string(kDisambiguationClass)});
  const auto& pool = detail::filler_properties();
  for (std::size_t k = 0; static_cast<std::int64_t>(out.size()) < item.statements; ++k)
    out.push_back({pool[k % pool.size()], "v" + std::to_string(k)});
  return out;
}

namespace detail {

inline ResultRow count_row(std::int64_t n) {
  ResultRow r;
  r.bindings.emplace("count", n);
  return r;
}

inline std::string entity_iri(const QId& q) { return std::string(kWikidataEntityBase) + q.to_string(); }

inline void record(const std::filesystem::path& out, const SparqlQuery& q, const std::vector<ResultRow>& rows) {
  auto vars = required_variables(q.shape);
  record_fixture(out, q, render_results(vars, rows));
}

// Brute-force evaluation of each query family over the graph.
struct Evaluator {
  const Graph& g;

  bool linked_under(const Item& it, std::string_view prefix) const {
    return it.synset && WordNetUri(*it.synset, UriStyle::legacy).to_string().starts_with(prefix);
  }

  std::vector<ResultRow> statement_rows(std::string_view prefix) const {
    std::vector<std::pair<std::int64_t, QId>> rows;
    for (const auto& it : g.items)
      if (linked_under(it, prefix)) rows.emplace_back(static_cast<std::int64_t>(statements_of(it).size()), it.qid);
    std::sort(rows.begin(), rows.end());
    std::vector<ResultRow> out;
    for (const auto& [count, qid] : rows) {
      ResultRow r;
      r.bindings.emplace("item", Iri{entity_iri(qid)});
      r.bindings.emplace("count", count);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<ResultRow> histogram_rows(std::string_view prefix) const {
    std::map<std::int64_t, std::int64_t> bins;
    for (const auto& it : g.items)
      if (linked_under(it, prefix)) ++bins[static_cast<std::int64_t>(statements_of(it).size())];
    std::vector<ResultRow> out;
    for (const auto& [count, freq] : bins) {
      ResultRow r;
      r.bindings.emplace("count", count);
      r.bindings.emplace("frequency", freq);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::int64_t count_linked(std::string_view prefix) const {
    std::int64_t n = 0;
    for (const auto& it : g.items) n += linked_under(it, prefix) ? 1 : 0;
    return n;
  }

  std::int64_t cooccurrence(std::string_view prefix) const {
    std::int64_t n = 0;
    for (const auto& it : g.items) {
      if (!linked_under(it, prefix)) continue;
      auto st = statements_of(it);
      n += std::any_of(st.begin(), st.end(), [](const auto& s) { return s.property == "P2581"; }) ? 1 : 0;
    }
    return n;
  }
};

}  // namespace detail

inline void write_graph(const Graph& g, const std::filesystem::path& out) {
  std::filesystem::create_directories(out / "graph");
  std::ofstream st(out / "graph" / "statements.tsv", std::ios::binary | std::ios::trunc);
  st << "item\tproperty\tvalue\n";
  for (const auto& it : g.items)
    for (const auto& s : statements_of(it)) st << it.qid.to_string() << '\t' << s.property << '\t' << s.value << '\n';
  std::ofstream lb(out / "graph" / "labels.tsv", std::ios::binary | std::ios::trunc);
  lb << "qid\tlang\tlabel\n";
  for (const auto& it : g.items)
    for (const auto& [lang, label] : it.labels) lb << it.qid.to_string() << '\t' << lang << '\t' << label << '\n';
}

inline void write_responses(const Graph& g, const ClassIndex& classes, const std::filesystem::path& out) {
  using detail::record;
  detail::Evaluator eval{g};

  for (std::string_view prefix : {kWordNet30Prefix, kWordNet31Prefix}) {
    record(out, build_count_linked_query(prefix), {detail::count_row(eval.count_linked(prefix))});
    record(out, build_statement_counts_query(prefix), eval.statement_rows(prefix));
    record(out, build_histogram_query(prefix), eval.histogram_rows(prefix));
    record(out, build_cooccurrence_query(prefix), {detail::count_row(eval.cooccurrence(prefix))});
  }
  record(out, build_babelnet_count_query(), {detail::count_row(kBabelNetUsage)});

  std::set<SynsetRef> synsets;
  for (const auto& e : classes.entries()) synsets.insert(e.imagenet.synset());
  for (const auto& it : g.items)
    if (it.synset) synsets.insert(*it.synset);
  for (const auto& s : synsets) {
    std::vector<ResultRow> rows;
    for (const auto& it : g.items) {
      if (it.synset != s) continue;
      ResultRow r;
      r.bindings.emplace("item", Iri{detail::entity_iri(it.qid)});
      rows.push_back(std::move(r));
    }
    record(out, build_inverse_mapping_query(WordNetUri(s, UriStyle::legacy)), rows);
  }

  for (const auto& it : g.items) {
    for (const auto& lang : kRecordedLanguages) {
      std::vector<ResultRow> rows;
      if (auto l = it.labels.find(lang); l != it.labels.end()) {
        ResultRow r;
        r.bindings.emplace("lang", Literal{lang, std::nullopt, std::nullopt});
        r.bindings.emplace("label", Literal{l->second, lang, std::nullopt});
        rows.push_back(std::move(r));
      }
      record(out, build_label_query(it.qid, std::vector<std::string>{lang}), rows);
    }
    record(out, build_disambiguation_query(it.qid), {detail::count_row(it.disambiguation ? 1 : 0)});
  }
}

inline void write_snapshot(const Graph& g, const std::filesystem::path& out) {
  SnapshotStore store;
  for (const auto& it : g.items) {
    if (!it.synset) continue;
    store.add_mapping(*it.synset, it.qid);
    for (const auto& [lang, label] : it.labels) store.add_label({it.qid, lang, label});
  }
  snapshot_save(store, out / "snapshot");
}

inline void generate(const ClassIndex& classes, const std::filesystem::path& out) {
  Graph g = build_graph(classes);
  std::filesystem::remove_all(out / "responses");
  write_graph(g, out);
  write_responses(g, classes, out);
  write_snapshot(g, out);
}

}  // namespace synsetlink::fixturegen
