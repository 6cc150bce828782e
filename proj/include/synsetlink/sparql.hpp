#pragma once

// Query construction for the WDQS queries the toolkit issues, and a typed
// reader for the W3C SPARQL 1.1 JSON results format.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "synsetlink/identifiers.hpp"

namespace synsetlink {

enum class QueryShape { single_count, item_rows, item_count_rows, count_frequency_rows, label_rows };

inline std::string_view to_string(QueryShape shape) {
  switch (shape) {
    case QueryShape::single_count: return "single_count";
    case QueryShape::item_rows: return "item_rows";
    case QueryShape::item_count_rows: return "item_count_rows";
    case QueryShape::count_frequency_rows: return "count_frequency_rows";
    case QueryShape::label_rows: return "label_rows";
  }
  return "unknown";
}

/// Variables every result row must bind for the given shape.
inline std::span<const std::string_view> required_variables(QueryShape shape) {
  static constexpr std::string_view count[] = {"count"};
  static constexpr std::string_view item[] = {"item"};
  static constexpr std::string_view item_count[] = {"item", "count"};
  static constexpr std::string_view count_frequency[] = {"count", "frequency"};
  static constexpr std::string_view label[] = {"lang", "label"};
  switch (shape) {
    case QueryShape::single_count: return count;
    case QueryShape::item_rows: return item;
    case QueryShape::item_count_rows: return item_count;
    case QueryShape::count_frequency_rows: return count_frequency;
    case QueryShape::label_rows: return label;
  }
  return {};
}

struct SparqlQuery {
  std::string text;
  QueryShape shape;
};

enum class SparqlErrorKind { malformed_results, shape_mismatch, invalid_argument };

class SparqlError : public std::runtime_error {
 public:
  SparqlError(SparqlErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] SparqlErrorKind kind() const noexcept { return kind_; }

 private:
  SparqlErrorKind kind_;
};

/// Collapses every whitespace run to one space and trims both ends. Query
/// line breaks carry no meaning, so this is the comparison and hashing form.
inline std::string canonicalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

inline constexpr std::string_view kWordNet30Prefix = "http://wordnet-rdf.princeton.edu/wn30/";
inline constexpr std::string_view kWordNet31Prefix = "http://wordnet-rdf.princeton.edu/wn31/";
inline constexpr std::string_view kDirectPropertyPrefix = "http://www.wikidata.org/prop/direct/";
/// Class of Wikimedia disambiguation pages.
inline constexpr std::string_view kDisambiguationClass = "Q4167410";

namespace detail {

inline std::string checked_prefix(std::string_view prefix) {
  if (prefix.empty()) throw SparqlError(SparqlErrorKind::invalid_argument, "empty URI prefix");
  for (char c : prefix) {
    if (c == '"' || c == '\\' || c == '<' || c == '>' || static_cast<unsigned char>(c) <= ' ')
      throw SparqlError(SparqlErrorKind::invalid_argument,
                        "URI prefix contains a character that cannot appear in a string literal: " +
                            std::string(prefix));
  }
  return std::string(prefix);
}

inline std::string replace_all(std::string text, std::string_view token, std::string_view value) {
  for (auto pos = text.find(token); pos != std::string::npos; pos = text.find(token, pos + value.size()))
    text.replace(pos, token.size(), value);
  return text;
}

}  // namespace detail

// The three statistics listings keep the published line layout; only the
// quoted prefix is substituted.

inline SparqlQuery build_inverse_mapping_query(const WordNetUri& uri) {
  return {"SELECT * WHERE { ?item wdt:P2888 <" + uri.to_string() + "> }", QueryShape::item_rows};
}

inline SparqlQuery build_count_linked_query(std::string_view prefix = kWordNet30Prefix) {
  static constexpr std::string_view tmpl = R"(SELECT
  (COUNT(*) AS ?count)
WHERE {
  ?item wdt:P2888 ?uri .
  FILTER STRSTARTS(STR(?uri),
    "@PREFIX@")
}
)";
  return {detail::replace_all(std::string(tmpl), "@PREFIX@", detail::checked_prefix(prefix)),
          QueryShape::single_count};
}

inline SparqlQuery build_statement_counts_query(std::string_view prefix = kWordNet30Prefix) {
  static constexpr std::string_view tmpl = R"(SELECT
  ?item
  (COUNT(?property) AS ?count)
WHERE {
  ?item wdt:P2888 ?uri .
  FILTER STRSTARTS(STR(?uri),
    "@PREFIX@")
  ?item ?property [] .
  FILTER STRSTARTS(STR(?property),
    "http://www.wikidata.org/prop/direct/")
}
GROUP BY ?item
ORDER BY ?count
)";
  return {detail::replace_all(std::string(tmpl), "@PREFIX@", detail::checked_prefix(prefix)),
          QueryShape::item_count_rows};
}

inline SparqlQuery build_histogram_query(std::string_view prefix = kWordNet30Prefix) {
  static constexpr std::string_view tmpl = R"(SELECT
  ?count (COUNT(?item) AS ?frequency)
WHERE {
  SELECT
    ?item
    (COUNT(?property) AS ?count)
  WHERE {
    ?item wdt:P2888 ?uri .
    FILTER STRSTARTS(STR(?uri),
      "@PREFIX@")
    ?item ?property [] .
    FILTER STRSTARTS(STR(?property),
      "http://www.wikidata.org/prop/direct/")
  }
  GROUP BY ?item
}
GROUP BY ?count
)";
  return {detail::replace_all(std::string(tmpl), "@PREFIX@", detail::checked_prefix(prefix)),
          QueryShape::count_frequency_rows};
}

inline SparqlQuery build_babelnet_count_query() {
  return {"SELECT (COUNT(*) AS ?count) WHERE { [] wdt:P2581 [] }", QueryShape::single_count};
}

/// Items holding both a P2888 link under `prefix` and a BabelNet ID.
inline SparqlQuery build_cooccurrence_query(std::string_view prefix = kWordNet30Prefix) {
  static constexpr std::string_view tmpl = R"(SELECT
  (COUNT(DISTINCT ?item) AS ?count)
WHERE {
  ?item wdt:P2888 ?uri .
  FILTER STRSTARTS(STR(?uri),
    "@PREFIX@")
  ?item wdt:P2581 [] .
}
)";
  return {detail::replace_all(std::string(tmpl), "@PREFIX@", detail::checked_prefix(prefix)),
          QueryShape::single_count};
}

inline SparqlQuery build_label_query(const QId& qid, std::span<const std::string> languages) {
  if (languages.empty()) throw SparqlError(SparqlErrorKind::invalid_argument, "label query needs a language");
  std::string list;
  for (const auto& lang : languages) {
    if (!list.empty()) list += ", ";
    list += '"' + parse_language_tag(lang) + '"';
  }
  std::string text = "SELECT ?lang ?label WHERE {\n  wd:" + qid.to_string() +
                     " rdfs:label ?label .\n  BIND(LANG(?label) AS ?lang)\n  FILTER(?lang IN (" + list +
                     "))\n}\n";
  return {std::move(text), QueryShape::label_rows};
}

/// Counts P31 statements placing the item in the disambiguation-page class.
inline SparqlQuery build_disambiguation_query(const QId& qid) {
  return {"SELECT (COUNT(*) AS ?count) WHERE { wd:" + qid.to_string() + " wdt:P31 wd:" +
              std::string(kDisambiguationClass) + " }",
          QueryShape::single_count};
}

// ---------------------------------------------------------------------------
// Results

struct Iri {
  std::string value;
  friend bool operator==(const Iri&, const Iri&) = default;
};

struct Literal {
  std::string value;
  std::optional<std::string> lang;
  std::optional<std::string> datatype;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal, std::int64_t>;

class ResultRow {
 public:
  std::map<std::string, Term> bindings;

  [[nodiscard]] const Term& at(const std::string& var) const {
    auto it = bindings.find(var);
    if (it == bindings.end()) throw SparqlError(SparqlErrorKind::shape_mismatch, "variable ?" + var + " unbound");
    return it->second;
  }

  [[nodiscard]] std::int64_t integer(const std::string& var) const;
  [[nodiscard]] QId qid(const std::string& var) const;
  [[nodiscard]] std::string text(const std::string& var) const;
};

namespace detail {

inline bool is_integer_datatype(std::string_view dt) {
  constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
  if (!dt.starts_with(xsd)) return false;
  dt.remove_prefix(xsd.size());
  for (std::string_view t : {"integer", "int", "long", "short", "byte", "nonNegativeInteger", "positiveInteger",
                             "nonPositiveInteger", "negativeInteger", "unsignedLong", "unsignedInt",
                             "unsignedShort", "unsignedByte"})
    if (dt == t) return true;
  return false;
}

inline std::optional<std::int64_t> parse_int64(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

inline Term parse_term(const std::string& var, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("value") || !j["type"].is_string() ||
      !j["value"].is_string())
    throw SparqlError(SparqlErrorKind::malformed_results, "binding for ?" + var + " lacks type/value");
  const auto& type = j["type"].get_ref<const std::string&>();
  const auto& value = j["value"].get_ref<const std::string&>();
  if (type == "uri") return Iri{value};
  if (type == "literal" || type == "typed-literal") {
    Literal lit{value, std::nullopt, std::nullopt};
    if (auto it = j.find("xml:lang"); it != j.end() && it->is_string()) lit.lang = it->get<std::string>();
    if (auto it = j.find("datatype"); it != j.end() && it->is_string()) lit.datatype = it->get<std::string>();
    if (lit.datatype && is_integer_datatype(*lit.datatype)) {
      auto n = parse_int64(value);
      if (!n) throw SparqlError(SparqlErrorKind::malformed_results, "integer literal out of range for ?" + var + ": " + value);
      return *n;
    }
    return lit;
  }
  if (type == "bnode") return Iri{"_:" + value};
  throw SparqlError(SparqlErrorKind::malformed_results, "unknown term type '" + type + "' for ?" + var);
}

}  // namespace detail

inline std::int64_t ResultRow::integer(const std::string& var) const {
  const Term& t = at(var);
  if (auto* n = std::get_if<std::int64_t>(&t)) return *n;
  if (auto* lit = std::get_if<Literal>(&t)) {
    if (auto n = detail::parse_int64(lit->value)) return *n;
  }
  throw SparqlError(SparqlErrorKind::shape_mismatch, "?" + var + " is not an integer");
}

inline QId ResultRow::qid(const std::string& var) const {
  const Term& t = at(var);
  try {
    if (auto* iri = std::get_if<Iri>(&t)) return qid_from_entity_iri(iri->value);
    if (auto* lit = std::get_if<Literal>(&t)) return parse_qid(lit->value);
  } catch (const IdError& e) {
    throw SparqlError(SparqlErrorKind::shape_mismatch, "?" + var + " is not a Wikidata item: " + e.what());
  }
  throw SparqlError(SparqlErrorKind::shape_mismatch, "?" + var + " is not a Wikidata item");
}

inline std::string ResultRow::text(const std::string& var) const {
  const Term& t = at(var);
  if (auto* lit = std::get_if<Literal>(&t)) return lit->value;
  if (auto* iri = std::get_if<Iri>(&t)) return iri->value;
  return std::to_string(std::get<std::int64_t>(t));
}

/// Parses a SPARQL JSON results document and checks that every row binds
/// the variables `shape` requires. Rows are returned in document order.
inline std::vector<ResultRow> parse_results(std::string_view body, QueryShape shape) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SparqlError(SparqlErrorKind::malformed_results, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_object() ||
      !doc["results"].contains("bindings") || !doc["results"]["bindings"].is_array())
    throw SparqlError(SparqlErrorKind::malformed_results, "missing results.bindings array");

  const auto& bindings = doc["results"]["bindings"];
  std::vector<ResultRow> rows;
  rows.reserve(bindings.size());
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const auto& b = bindings[i];
    if (!b.is_object())
      throw SparqlError(SparqlErrorKind::malformed_results, "binding " + std::to_string(i) + " is not an object");
    ResultRow row;
    for (const auto& [var, term] : b.items()) row.bindings.emplace(var, detail::parse_term(var, term));
    for (auto var : required_variables(shape)) {
      if (!row.bindings.contains(std::string(var)))
        throw SparqlError(SparqlErrorKind::shape_mismatch, "row " + std::to_string(i) + " does not bind ?" +
                                                               std::string(var) + " required by " +
                                                               std::string(to_string(shape)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Serializes rows back into a results document; used when recording
/// fixture responses.
inline std::string render_results(std::span<const std::string_view> vars, const std::vector<ResultRow>& rows) {
  nlohmann::json doc;
  doc["head"]["vars"] = nlohmann::json::array();
  for (auto v : vars) doc["head"]["vars"].push_back(std::string(v));
  auto& out = doc["results"]["bindings"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [var, term] : row.bindings) {
      if (auto* iri = std::get_if<Iri>(&term)) {
        b[var] = {{"type", "uri"}, {"value", iri->value}};
      } else if (auto* lit = std::get_if<Literal>(&term)) {
        nlohmann::json j = {{"type", "literal"}, {"value", lit->value}};
        if (lit->lang) j["xml:lang"] = *lit->lang;
        if (lit->datatype) j["datatype"] = *lit->datatype;
        b[var] = std::move(j);
      } else {
        b[var] = {{"type", "literal"},
                  {"datatype", "http://www.w3.org/2001/XMLSchema#integer"},
                  {"value", std::to_string(std::get<std::int64_t>(term))}};
      }
    }
    out.push_back(std::move(b));
  }
  return doc.dump();
}

}  // namespace synsetlink
