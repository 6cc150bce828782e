#include <gtest/gtest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "synsetlink/cli.hpp"

using synsetlink::testing::fixtures_dir;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "synsetlink");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = synsetlink::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixtures = fixtures_dir().string();

}  // namespace

TEST(Cli, Convert) {
  EXPECT_EQ(run({"convert", "n07753592"}).out, "http://wordnet-rdf.princeton.edu/wn30/07753592-n\n");
  EXPECT_EQ(run({"convert", "n07753592", "--style", "canonical"}).out,
            "http://wordnet-rdf.princeton.edu/pwn30/07753592-n\n");
  EXPECT_EQ(run({"convert", "http://wordnet-rdf.princeton.edu/pwn30/07753592-n"}).out, "n07753592\n");
  EXPECT_EQ(run({"convert", "http://wordnet-rdf.princeton.edu/wn31/107753592-n", "--style", "canonical"}).out,
            "http://wordnet-rdf.princeton.edu/pwn31/107753592-n\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"convert", "n07753592", "--style", "weird"}).code, 1);
  EXPECT_EQ(run({"convert", "banana"}).code, 3);
  EXPECT_EQ(run({"convert", "http://wordnet-rdf.princeton.edu/wn31/07753592-n"}).code, 3);
  EXPECT_EQ(run({"--fixtures", kFixtures, "--snapshot", "x", "resolve", "n07753592"}).code, 1);
  EXPECT_EQ(run({"label", "n07753592"}).code, 1);  // --lang is required
  EXPECT_EQ(run({"--snapshot", kFixtures + "/snapshot", "stats", "count"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EndpointFailureExitCode) {
  auto r = run({"--endpoint", "http://127.0.0.1:1/sparql", "resolve", "n07753592"});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST(Cli, Resolve) {
  auto r = run({"--fixtures", kFixtures, "resolve", "n04033901"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "http://wordnet-rdf.princeton.edu/wn30/04033901-n\tQ4063215\n");
  EXPECT_EQ(run({"resolve", "n03724870", "--fixtures", kFixtures}).out,
            "http://wordnet-rdf.princeton.edu/wn30/03724870-n\tQ90100012,Q90100013\n");
  EXPECT_EQ(run({"--fixtures", kFixtures, "resolve", "n07930864"}).out,
            "http://wordnet-rdf.princeton.edu/wn30/07930864-n\t-\n");
  EXPECT_EQ(run({"--snapshot", kFixtures + "/snapshot", "resolve", "n07711569"}).out,
            "http://wordnet-rdf.princeton.edu/wn30/07711569-n\tQ322787\n");
}

TEST(Cli, Label) {
  auto r = run({"--fixtures", kFixtures, "label", "n07711569", "--lang", "da"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["label"], "kartoffelmos");
  EXPECT_EQ(j["qid"], "Q322787");
  auto none = nlohmann::json::parse(run({"--fixtures", kFixtures, "label", "n04033901", "--lang", "xx", "--fallback", "da"}).out);
  EXPECT_TRUE(none["label"].is_null());
}

TEST(Cli, Stats) {
  EXPECT_EQ(run({"stats", "count", "--fixtures", kFixtures}).out, "324\n");
  EXPECT_EQ(run({"--fixtures", kFixtures, "stats", "cooccurrence"}).out, "105\n");
  EXPECT_EQ(run({"--fixtures", kFixtures, "stats", "babelnet"}).out, "59105\n");
  auto h = run({"--fixtures", kFixtures, "stats", "histogram"});
  EXPECT_EQ(h.out.rfind("count,frequency\n", 0), 0u);
  EXPECT_NE(h.err.find("mode: 9"), std::string::npos);
  EXPECT_EQ(run({"--fixtures", kFixtures, "stats", "low", "--threshold", "2"}).out, "Q4165197\nQ90100002\n");
  EXPECT_EQ(run({"--fixtures", kFixtures, "stats", "mean"}).code, 1);

  auto csv = std::filesystem::temp_directory_path() / "synsetlink-cli-hist.csv";
  EXPECT_EQ(run({"--fixtures", kFixtures, "stats", "histogram", "--csv", csv.string()}).code, 0);
  EXPECT_EQ(synsetlink::parse_histogram_csv(synsetlink::testing::read_file(csv)).total_items(), 324);
  std::filesystem::remove(csv);
}

TEST(Cli, Audit) {
  auto r = run({"audit", kFixtures + "/audit/table1.tsv", "--format", "tsv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("imagenet_wordnet_discrepancy\t4\n"), std::string::npos);
  auto check = run({"--fixtures", kFixtures, "audit", kFixtures + "/audit/suspects.tsv", "--check"});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_NE(check.out.find("flag\tdisambiguation\tn03775546\tQ90100010\n"), std::string::npos);
  EXPECT_NE(check.out.find("flag\tdivergent\tn04392985\tQ90100018\n"), std::string::npos);

  auto bad = std::filesystem::temp_directory_path() / "synsetlink-cli-bad.tsv";
  std::ofstream(bad) << "imagenet\twordnet\n";
  EXPECT_EQ(run({"audit", bad.string()}).code, 3);
  std::filesystem::remove(bad);
}

TEST(Cli, SnapshotSaveAgreesWithBundled) {
  auto dir = std::filesystem::temp_directory_path() / "synsetlink-cli-snapshot";
  std::filesystem::remove_all(dir);
  auto r = run({"--fixtures", kFixtures, "snapshot", "save", dir.string(), "--langs", "en,da"});
  ASSERT_EQ(r.code, 0) << r.err;
  // The saved snapshot covers the class list; the bundled one covers every linked synset.
  auto saved = synsetlink::snapshot_load(dir);
  auto bundled = synsetlink::snapshot_load(fixtures_dir() / "snapshot");
  auto classes = synsetlink::load_class_index(fixtures_dir() / "ilsvrc" / "classes.tsv");
  std::size_t rows = 0;
  for (const auto& [synset, qids] : bundled.mappings()) {
    if (!classes.contains(synsetlink::ImageNetId(synset.pos(), synset.offset()))) continue;
    EXPECT_EQ(saved.qids_for(synset), bundled.qids_for(synset)) << synset.key();
    rows += qids.size();
  }
  EXPECT_EQ(saved.mapping_rows(), rows);
  for (const auto& [key, label] : saved.labels()) EXPECT_EQ(bundled.label(key.first, key.second), label);
  auto load = run({"snapshot", "load", dir.string()});
  EXPECT_EQ(load.code, 0);
  EXPECT_NE(load.out.find("mapping rows: " + std::to_string(rows)), std::string::npos);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"snapshot", "load", dir.string()}).code, 3);
}
