#include <gtest/gtest.h>

#include <cstdio>
#include <random>
#include <unordered_set>

#include "synsetlink/identifiers.hpp"

using namespace synsetlink;

namespace {

IdErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const IdError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no IdError thrown";
  return IdErrorKind::malformed_id;
}

constexpr char kPosLetters[] = {'n', 'v', 'a', 's', 'r'};

}  // namespace

TEST(ImageNetId, ParsesBanana) {
  auto id = parse_imagenet_id("n07753592");
  EXPECT_EQ(id.pos(), PartOfSpeech::noun);
  EXPECT_EQ(id.offset(), 7753592u);
  EXPECT_EQ(id.to_string(), "n07753592");
  EXPECT_EQ(id.synset().key(), "07753592-n");
}

TEST(ImageNetId, ToUriAndBack) {
  auto uri = imagenet_to_uri(parse_imagenet_id("n04033901"));
  EXPECT_EQ(uri.to_string(), "http://wordnet-rdf.princeton.edu/wn30/04033901-n");
  EXPECT_EQ(imagenet_to_uri(parse_imagenet_id("n04033901"), WordNetVersion::wn30, UriStyle::canonical).to_string(),
            "http://wordnet-rdf.princeton.edu/pwn30/04033901-n");
  EXPECT_EQ(uri_to_imagenet(uri).to_string(), "n04033901");
}

TEST(ImageNetId, Rejects) {
  EXPECT_EQ(kind_of([] { parse_imagenet_id("banana"); }), IdErrorKind::malformed_id);
  EXPECT_EQ(kind_of([] { parse_imagenet_id("n0775359"); }), IdErrorKind::malformed_id);
  EXPECT_EQ(kind_of([] { parse_imagenet_id("N07753592"); }), IdErrorKind::malformed_id);
  EXPECT_EQ(kind_of([] { parse_imagenet_id("x07753592"); }), IdErrorKind::unknown_pos);
  EXPECT_EQ(kind_of([] { parse_imagenet_id("n00000000"); }), IdErrorKind::zero_offset);
  EXPECT_EQ(kind_of([] { parse_imagenet_id("n0775359a"); }), IdErrorKind::malformed_id);
}

TEST(ImageNetId, NoMappingToWordNet31) {
  EXPECT_EQ(kind_of([] { imagenet_to_uri(parse_imagenet_id("n07753592"), WordNetVersion::wn31); }),
            IdErrorKind::unsupported_version);
}

TEST(WordNetUri, ParsesAllSegments) {
  auto a = parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/07711569-n");
  EXPECT_EQ(a.version(), WordNetVersion::wn30);
  EXPECT_EQ(a.style(), UriStyle::legacy);
  auto b = parse_wordnet_uri("http://wordnet-rdf.princeton.edu/pwn30/07711569-n");
  EXPECT_EQ(b.style(), UriStyle::canonical);
  EXPECT_EQ(normalize_uri(b, UriStyle::legacy), a);
  auto c = parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn31/07711569-n");
  EXPECT_EQ(c.version(), WordNetVersion::wn31);
  EXPECT_EQ(kind_of([&] { uri_to_imagenet(c); }), IdErrorKind::unsupported_version);
}

TEST(WordNetUri, NineDigitWn31KeepsLeadingDigit) {
  const std::string text = "http://wordnet-rdf.princeton.edu/wn31/107753592-n";
  auto uri = parse_wordnet_uri(text);
  ASSERT_TRUE(uri.wn31_lead().has_value());
  EXPECT_EQ(*uri.wn31_lead(), '1');
  EXPECT_EQ(uri.synset().offset(), 7753592u);
  EXPECT_EQ(uri.to_string(), text);
  EXPECT_EQ(normalize_uri(uri, UriStyle::canonical).to_string(), "http://wordnet-rdf.princeton.edu/pwn31/107753592-n");
}

TEST(WordNetUri, Rejects) {
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("https://wordnet-rdf.princeton.edu/wn30/07753592-n"); }),
            IdErrorKind::malformed_uri);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn20/07753592-n"); }),
            IdErrorKind::unknown_segment);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/107753592-n"); }),
            IdErrorKind::bad_offset_width);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/7753592-n"); }),
            IdErrorKind::bad_offset_width);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/07753592-q"); }),
            IdErrorKind::unknown_pos);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/00000000-n"); }),
            IdErrorKind::zero_offset);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30"); }), IdErrorKind::malformed_uri);
  EXPECT_EQ(kind_of([] { parse_wordnet_uri("http://wordnet-rdf.princeton.edu/wn30/07753592n"); }),
            IdErrorKind::malformed_uri);
}

TEST(SynsetKey, ParsesAndRejects) {
  EXPECT_EQ(parse_synset_key("04033901-n").offset(), 4033901u);
  EXPECT_EQ(kind_of([] { parse_synset_key("04033901n"); }), IdErrorKind::malformed_id);
  EXPECT_EQ(kind_of([] { parse_synset_key("04033901-x"); }), IdErrorKind::unknown_pos);
}

TEST(QIdTest, ParseAndOrder) {
  EXPECT_EQ(parse_qid("Q322787").number(), 322787u);
  EXPECT_EQ(qid_from_entity_iri("http://www.wikidata.org/entity/Q4063215"), QId(4063215));
  EXPECT_LT(parse_qid("Q9"), parse_qid("Q10"));
  EXPECT_EQ(kind_of([] { parse_qid("Q0"); }), IdErrorKind::malformed_qid);
  EXPECT_EQ(kind_of([] { parse_qid("Q012"); }), IdErrorKind::malformed_qid);
  EXPECT_EQ(kind_of([] { parse_qid("q12"); }), IdErrorKind::malformed_qid);
  EXPECT_EQ(kind_of([] { parse_qid("Q"); }), IdErrorKind::malformed_qid);
  EXPECT_EQ(kind_of([] { parse_qid("Q99999999999999999999999"); }), IdErrorKind::malformed_qid);
}

TEST(LanguageTag, NormalizesAndRejects) {
  EXPECT_EQ(parse_language_tag("EN"), "en");
  EXPECT_EQ(parse_language_tag("pt-BR"), "pt-br");
  EXPECT_EQ(parse_language_tag("zh-Hant-TW"), "zh-hant-tw");
  for (const char* bad : {"", "e", "en-", "-en", "e n", "en_US", "1a", "toolongtag"})
    EXPECT_EQ(kind_of([&] { parse_language_tag(bad); }), IdErrorKind::malformed_language) << bad;
}

// Reference rendering built with printf, independent of the library code.
TEST(IdentifierProperties, RoundTrip10000) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::uint32_t> offset(1, kMaxOffset);
  std::uniform_int_distribution<int> pos(0, 4);
  std::uniform_int_distribution<int> flag(0, 1);
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    std::uint32_t off = offset(rng);
    char letter = kPosLetters[pos(rng)];
    char expected_id[16];
    std::snprintf(expected_id, sizeof expected_id, "%c%08u", letter, off);
    char expected_uri[96];
    bool canonical = flag(rng) == 1;
    std::snprintf(expected_uri, sizeof expected_uri, "http://wordnet-rdf.princeton.edu/%swn30/%08u-%c",
                  canonical ? "p" : "", off, letter);

    auto id = parse_imagenet_id(expected_id);
    auto uri = imagenet_to_uri(id, WordNetVersion::wn30, canonical ? UriStyle::canonical : UriStyle::legacy);
    bool ok = id.to_string() == expected_id && uri.to_string() == expected_uri &&
              parse_wordnet_uri(expected_uri) == uri && uri_to_imagenet(uri) == id &&
              uri_to_imagenet(parse_wordnet_uri(uri.to_string())).to_string() == expected_id;
    if (!ok && ++failures < 5) ADD_FAILURE() << "round trip failed for " << expected_id;
  }
  EXPECT_EQ(failures, 0);
}

TEST(IdentifierProperties, NormalizationIdempotent10000) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> offset(1, kMaxOffset);
  std::uniform_int_distribution<int> pos(0, 4);
  std::uniform_int_distribution<int> segment(0, 3);
  std::uniform_int_distribution<int> lead(-1, 9);
  const char* segments[] = {"wn30", "pwn30", "wn31", "pwn31"};
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    int seg = segment(rng);
    int l = seg >= 2 ? lead(rng) : -1;
    char text[96];
    std::snprintf(text, sizeof text, "http://wordnet-rdf.princeton.edu/%s/%s%08u-%c", segments[seg],
                  l >= 0 ? std::to_string(l).c_str() : "", offset(rng), kPosLetters[pos(rng)]);
    auto uri = parse_wordnet_uri(text);
    bool ok = uri.to_string() == text;
    for (auto style : {UriStyle::legacy, UriStyle::canonical}) {
      auto once = normalize_uri(uri, style);
      auto twice = normalize_uri(once, style);
      ok = ok && once == twice && once.to_string() == twice.to_string() && once.synset() == uri.synset() &&
           once.wn31_lead() == uri.wn31_lead() && parse_wordnet_uri(once.to_string()) == once;
    }
    if (!ok && ++failures < 5) ADD_FAILURE() << "normalization failed for " << text;
  }
  EXPECT_EQ(failures, 0);
}

TEST(IdentifierProperties, QIdStringRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> n(1, 200'000'000);
  for (int i = 0; i < 10'000; ++i) {
    auto v = n(rng);
    auto q = parse_qid("Q" + std::to_string(v));
    ASSERT_EQ(q.number(), v);
    ASSERT_EQ(parse_qid(q.to_string()), q);
  }
  std::unordered_set<QId> set{QId(1), QId(1), QId(2)};
  EXPECT_EQ(set.size(), 2u);
}
