#pragma once

// Identifier families that meet in the ImageNet / WordNet / Wikidata
// alignment: ImageNet synset IDs ("n07753592"), WordNet LOD URIs
// ("http://wordnet-rdf.princeton.edu/wn30/07753592-n") and Wikidata item
// IDs ("Q322787"). Everything here is a pure function on immutable values.

#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace synsetlink {

enum class IdErrorKind {
  malformed_id,
  unknown_pos,
  zero_offset,
  malformed_uri,
  unknown_segment,
  bad_offset_width,
  unsupported_version,
  malformed_qid,
  malformed_language,
};

inline std::string_view to_string(IdErrorKind kind) {
  switch (kind) {
    case IdErrorKind::malformed_id: return "MalformedId";
    case IdErrorKind::unknown_pos: return "UnknownPos";
    case IdErrorKind::zero_offset: return "ZeroOffset";
    case IdErrorKind::malformed_uri: return "MalformedUri";
    case IdErrorKind::unknown_segment: return "UnknownSegment";
    case IdErrorKind::bad_offset_width: return "BadOffsetWidth";
    case IdErrorKind::unsupported_version: return "UnsupportedVersion";
    case IdErrorKind::malformed_qid: return "MalformedQid";
    case IdErrorKind::malformed_language: return "MalformedLanguage";
  }
  return "IdError";
}

class IdError : public std::invalid_argument {
 public:
  IdError(IdErrorKind kind, std::string_view input, std::string_view what)
      : std::invalid_argument(std::string(to_string(kind)) + ": " + std::string(what) +
                              " in '" + std::string(input) + "'"),
        kind_(kind) {}

  [[nodiscard]] IdErrorKind kind() const noexcept { return kind_; }

 private:
  IdErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Part of speech

enum class PartOfSpeech { noun, verb, adjective, adjective_satellite, adverb };

constexpr char pos_letter(PartOfSpeech pos) noexcept {
  switch (pos) {
    case PartOfSpeech::noun: return 'n';
    case PartOfSpeech::verb: return 'v';
    case PartOfSpeech::adjective: return 'a';
    case PartOfSpeech::adjective_satellite: return 's';
    case PartOfSpeech::adverb: return 'r';
  }
  return '?';
}

constexpr std::optional<PartOfSpeech> pos_from_letter(char c) noexcept {
  switch (c) {
    case 'n': return PartOfSpeech::noun;
    case 'v': return PartOfSpeech::verb;
    case 'a': return PartOfSpeech::adjective;
    case 's': return PartOfSpeech::adjective_satellite;
    case 'r': return PartOfSpeech::adverb;
    default: return std::nullopt;
  }
}

enum class WordNetVersion { wn30, wn31 };
enum class UriStyle { legacy, canonical };

inline std::string_view to_string(WordNetVersion v) { return v == WordNetVersion::wn30 ? "wn30" : "wn31"; }
inline std::string_view to_string(UriStyle s) { return s == UriStyle::legacy ? "legacy" : "canonical"; }

inline std::optional<UriStyle> parse_style(std::string_view text) {
  if (text == "legacy") return UriStyle::legacy;
  if (text == "canonical") return UriStyle::canonical;
  return std::nullopt;
}

inline constexpr std::uint32_t kMaxOffset = 99'999'999;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline std::uint32_t parse_offset_digits(std::string_view digits) {
  std::uint32_t value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

inline std::string pad8(std::uint32_t offset) {
  std::string out(8, '0');
  for (int i = 7; i >= 0 && offset > 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<char>('0' + offset % 10);
    offset /= 10;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SynsetRef

/// A WordNet synset: part of speech, byte offset in the data file, and the
/// WordNet release the offset belongs to. Offsets are not portable across
/// releases.
class SynsetRef {
 public:
  SynsetRef(PartOfSpeech pos, std::uint32_t offset, WordNetVersion version = WordNetVersion::wn30)
      : pos_(pos), offset_(offset), version_(version) {
    if (offset == 0) throw IdError(IdErrorKind::zero_offset, render_key(), "offset must be positive");
    if (offset > kMaxOffset) throw IdError(IdErrorKind::malformed_id, render_key(), "offset exceeds 8 digits");
  }

  [[nodiscard]] PartOfSpeech pos() const noexcept { return pos_; }
  [[nodiscard]] std::uint32_t offset() const noexcept { return offset_; }
  [[nodiscard]] WordNetVersion version() const noexcept { return version_; }

  /// "07753592-n": the offset/POS key used inside LOD URIs and snapshot files.
  [[nodiscard]] std::string key() const { return render_key(); }

  friend auto operator<=>(const SynsetRef&, const SynsetRef&) = default;
  friend bool operator==(const SynsetRef&, const SynsetRef&) = default;

 private:
  [[nodiscard]] std::string render_key() const { return detail::pad8(offset_) + "-" + pos_letter(pos_); }

  PartOfSpeech pos_;
  std::uint32_t offset_;
  WordNetVersion version_;
};

/// Parses an "NNNNNNNN-p" key as a WordNet 3.0 synset.
inline SynsetRef parse_synset_key(std::string_view text) {
  if (text.size() != 10 || text[8] != '-' || !detail::all_digits(text.substr(0, 8)))
    throw IdError(IdErrorKind::malformed_id, text, "expected NNNNNNNN-p");
  auto pos = pos_from_letter(text[9]);
  if (!pos) throw IdError(IdErrorKind::unknown_pos, text, "unknown part-of-speech letter");
  auto offset = detail::parse_offset_digits(text.substr(0, 8));
  if (offset == 0) throw IdError(IdErrorKind::zero_offset, text, "offset must be positive");
  return SynsetRef(*pos, offset, WordNetVersion::wn30);
}

// ---------------------------------------------------------------------------
// ImageNetId

/// ImageNet's rendering of a WordNet 3.0 synset: POS letter + 8 digits.
class ImageNetId {
 public:
  ImageNetId(PartOfSpeech pos, std::uint32_t offset) : ref_(pos, offset, WordNetVersion::wn30) {}

  [[nodiscard]] PartOfSpeech pos() const noexcept { return ref_.pos(); }
  [[nodiscard]] std::uint32_t offset() const noexcept { return ref_.offset(); }
  [[nodiscard]] const SynsetRef& synset() const noexcept { return ref_; }

  [[nodiscard]] std::string to_string() const { return pos_letter(ref_.pos()) + detail::pad8(ref_.offset()); }

  friend auto operator<=>(const ImageNetId&, const ImageNetId&) = default;
  friend bool operator==(const ImageNetId&, const ImageNetId&) = default;

 private:
  SynsetRef ref_;
};

inline ImageNetId parse_imagenet_id(std::string_view text) {
  if (text.size() != 9 || text[0] < 'a' || text[0] > 'z' || !detail::all_digits(text.substr(1)))
    throw IdError(IdErrorKind::malformed_id, text, "expected one lowercase letter and 8 digits");
  auto pos = pos_from_letter(text[0]);
  if (!pos) throw IdError(IdErrorKind::unknown_pos, text, "unknown part-of-speech letter");
  auto offset = detail::parse_offset_digits(text.substr(1));
  if (offset == 0) throw IdError(IdErrorKind::zero_offset, text, "offset must be positive");
  return ImageNetId(*pos, offset);
}

// ---------------------------------------------------------------------------
// WordNetUri

inline constexpr std::string_view kWordNetRdfBase = "http://wordnet-rdf.princeton.edu/";

/// A WordNet LOD URI. `wn31_lead` holds the leading character of a 9-digit
/// WordNet 3.1 offset verbatim; its meaning is not interpreted.
class WordNetUri {
 public:
  WordNetUri(SynsetRef synset, UriStyle style, std::optional<char> wn31_lead = std::nullopt)
      : synset_(synset), style_(style), wn31_lead_(wn31_lead) {
    if (wn31_lead_ && synset_.version() != WordNetVersion::wn31)
      throw IdError(IdErrorKind::bad_offset_width, to_string(), "9-digit offsets only exist in wn31");
    if (wn31_lead_ && (*wn31_lead_ < '0' || *wn31_lead_ > '9'))
      throw IdError(IdErrorKind::malformed_uri, to_string(), "leading offset character must be a digit");
  }

  [[nodiscard]] const SynsetRef& synset() const noexcept { return synset_; }
  [[nodiscard]] WordNetVersion version() const noexcept { return synset_.version(); }
  [[nodiscard]] UriStyle style() const noexcept { return style_; }
  [[nodiscard]] std::optional<char> wn31_lead() const noexcept { return wn31_lead_; }

  [[nodiscard]] std::string segment() const {
    std::string seg = style_ == UriStyle::canonical ? "p" : "";
    seg += synsetlink::to_string(synset_.version());
    return seg;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out(kWordNetRdfBase);
    out += segment();
    out += '/';
    if (wn31_lead_) out += *wn31_lead_;
    out += synset_.key();
    return out;
  }

  friend auto operator<=>(const WordNetUri&, const WordNetUri&) = default;
  friend bool operator==(const WordNetUri&, const WordNetUri&) = default;

 private:
  SynsetRef synset_;
  UriStyle style_;
  std::optional<char> wn31_lead_;
};

inline WordNetUri parse_wordnet_uri(std::string_view text) {
  if (!text.starts_with(kWordNetRdfBase))
    throw IdError(IdErrorKind::malformed_uri, text, "not a wordnet-rdf.princeton.edu URI");
  std::string_view rest = text.substr(kWordNetRdfBase.size());
  auto slash = rest.find('/');
  if (slash == std::string_view::npos) throw IdError(IdErrorKind::malformed_uri, text, "missing synset path");
  std::string_view segment = rest.substr(0, slash);
  std::string_view tail = rest.substr(slash + 1);

  UriStyle style = UriStyle::legacy;
  if (segment.starts_with('p')) {
    style = UriStyle::canonical;
    segment.remove_prefix(1);
  }
  WordNetVersion version;
  if (segment == "wn30") {
    version = WordNetVersion::wn30;
  } else if (segment == "wn31") {
    version = WordNetVersion::wn31;
  } else {
    throw IdError(IdErrorKind::unknown_segment, text, "path segment must be wn30, pwn30, wn31 or pwn31");
  }

  auto dash = tail.find('-');
  if (dash == std::string_view::npos || tail.size() != dash + 2)
    throw IdError(IdErrorKind::malformed_uri, text, "expected <digits>-<pos>");
  std::string_view digits = tail.substr(0, dash);
  if (!detail::all_digits(digits)) throw IdError(IdErrorKind::malformed_uri, text, "offset must be decimal digits");

  std::optional<char> lead;
  if (digits.size() == 9 && version == WordNetVersion::wn31) {
    lead = digits.front();
    digits.remove_prefix(1);
  } else if (digits.size() != 8) {
    throw IdError(IdErrorKind::bad_offset_width, text,
                  version == WordNetVersion::wn30 ? "wn30 offsets have 8 digits" : "wn31 offsets have 8 or 9 digits");
  }

  auto pos = pos_from_letter(tail.back());
  if (!pos) throw IdError(IdErrorKind::unknown_pos, text, "unknown part-of-speech letter");
  auto offset = detail::parse_offset_digits(digits);
  if (offset == 0) throw IdError(IdErrorKind::zero_offset, text, "offset must be positive");
  return WordNetUri(SynsetRef(*pos, offset, version), style, lead);
}

inline WordNetUri imagenet_to_uri(const ImageNetId& id, WordNetVersion version = WordNetVersion::wn30,
                                  UriStyle style = UriStyle::legacy) {
  if (version != WordNetVersion::wn30)
    throw IdError(IdErrorKind::unsupported_version, id.to_string(),
                  "ImageNet IDs are WordNet 3.0 offsets; no mapping to 3.1 exists");
  return WordNetUri(id.synset(), style);
}

inline WordNetUri normalize_uri(const WordNetUri& uri, UriStyle target) {
  return WordNetUri(uri.synset(), target, uri.wn31_lead());
}

inline ImageNetId uri_to_imagenet(const WordNetUri& uri) {
  if (uri.version() != WordNetVersion::wn30)
    throw IdError(IdErrorKind::unsupported_version, uri.to_string(), "only WordNet 3.0 URIs map to ImageNet IDs");
  return ImageNetId(uri.synset().pos(), uri.synset().offset());
}

// ---------------------------------------------------------------------------
// QId

class QId {
 public:
  explicit QId(std::uint64_t number) : number_(number) {
    if (number == 0) throw IdError(IdErrorKind::malformed_qid, "Q0", "item numbers start at 1");
  }

  [[nodiscard]] std::uint64_t number() const noexcept { return number_; }
  [[nodiscard]] std::string to_string() const { return "Q" + std::to_string(number_); }

  friend auto operator<=>(const QId&, const QId&) = default;
  friend bool operator==(const QId&, const QId&) = default;

 private:
  std::uint64_t number_;
};

inline QId parse_qid(std::string_view text) {
  if (text.size() < 2 || text[0] != 'Q' || !detail::all_digits(text.substr(1)))
    throw IdError(IdErrorKind::malformed_qid, text, "expected Q followed by digits");
  if (text[1] == '0') throw IdError(IdErrorKind::malformed_qid, text, "leading zeros are not allowed");
  std::uint64_t number = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), number);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw IdError(IdErrorKind::malformed_qid, text, "item number out of range");
  return QId(number);
}

inline constexpr std::string_view kWikidataEntityBase = "http://www.wikidata.org/entity/";

/// Accepts both the entity IRI returned by WDQS and a bare "Q123".
inline QId qid_from_entity_iri(std::string_view text) {
  if (text.starts_with(kWikidataEntityBase)) text.remove_prefix(kWikidataEntityBase.size());
  return parse_qid(text);
}

// ---------------------------------------------------------------------------
// Language tags

/// Lower-cases and validates a BCP-47-style tag: a 2-8 letter primary subtag
/// followed by optional alphanumeric subtags of 1-8 characters.
inline std::string parse_language_tag(std::string_view text) {
  std::string tag;
  tag.reserve(text.size());
  std::size_t subtag_len = 0;
  bool primary = true;
  for (char c : text) {
    if (c == '-') {
      if ((primary && subtag_len < 2) || subtag_len == 0)
        throw IdError(IdErrorKind::malformed_language, text, "empty or short subtag");
      primary = false;
      subtag_len = 0;
      tag += c;
      continue;
    }
    char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    bool alpha = lower >= 'a' && lower <= 'z';
    bool digit = lower >= '0' && lower <= '9';
    if (!(alpha || (digit && !primary)))
      throw IdError(IdErrorKind::malformed_language, text, "invalid character");
    if (++subtag_len > 8) throw IdError(IdErrorKind::malformed_language, text, "subtag longer than 8");
    tag += lower;
  }
  if (subtag_len == 0 || (primary && subtag_len < 2))
    throw IdError(IdErrorKind::malformed_language, text, "empty or short subtag");
  return tag;
}

}  // namespace synsetlink

template <>
struct std::hash<synsetlink::QId> {
  std::size_t operator()(const synsetlink::QId& q) const noexcept { return std::hash<std::uint64_t>{}(q.number()); }
};
