#pragma once

// synsetlink command-line front end. Results go to `out`, diagnostics to
// `err`. Exit codes: 0 success, 1 usage, 2 endpoint failure, 3 validation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "synsetlink/audit.hpp"
#include "synsetlink/endpoint.hpp"
#include "synsetlink/fixture_backend.hpp"
#include "synsetlink/http_backend.hpp"
#include "synsetlink/identifiers.hpp"
#include "synsetlink/ilsvrc.hpp"
#include "synsetlink/resolver.hpp"
#include "synsetlink/service.hpp"
#include "synsetlink/snapshot.hpp"
#include "synsetlink/stats.hpp"

namespace synsetlink::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kEndpointFailure = 2, kValidationFailure = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceOptions {
  std::string endpoint_url;
  std::string fixtures_dir;
  std::string snapshot_dir;
};

inline std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? std::string(v) : std::move(fallback);
}

/// Picks the data source: explicit flags first, then SYNSETLINK_FIXTURES,
/// then either the default fixture directory (`prefer_fixtures`) or the live
/// endpoint named by SYNSETLINK_ENDPOINT.
inline std::shared_ptr<Endpoint> make_endpoint(const SourceOptions& src, bool prefer_fixtures, std::ostream& err,
                                               bool* is_live = nullptr) {
  std::string fixtures = src.fixtures_dir;
  std::string url = src.endpoint_url;
  if (fixtures.empty() && url.empty()) {
    fixtures = env_or("SYNSETLINK_FIXTURES", prefer_fixtures ? "fixtures" : "");
  }
  if (is_live) *is_live = fixtures.empty();
  if (!fixtures.empty())
    return std::make_shared<Endpoint>(EndpointConfig::for_fixtures(), std::make_shared<FixtureBackend>(fixtures));

  EndpointConfig config = EndpointConfig::from_environment();
  if (!url.empty()) config.base_url = url;
  err << "using live endpoint " << config.base_url << '\n';
  return std::make_shared<Endpoint>(config, std::make_shared<HttpBackend>(config));
}

inline std::unique_ptr<Resolver> make_resolver(const SourceOptions& src, std::ostream& err) {
  if (!src.snapshot_dir.empty())
    return std::make_unique<Resolver>(std::make_shared<const SnapshotStore>(snapshot_load(src.snapshot_dir)));
  return std::make_unique<Resolver>(make_endpoint(src, false, err));
}

inline std::string default_classes_path(const SourceOptions& src) {
  if (const char* v = std::getenv("SYNSETLINK_CLASSES"); v != nullptr && *v != '\0') return v;
  std::filesystem::path base = src.fixtures_dir.empty() ? env_or("SYNSETLINK_FIXTURES", "fixtures") : src.fixtures_dir;
  return (base / "ilsvrc" / "classes.tsv").string();
}

/// Accepts an ImageNet ID or a WordNet URI.
inline WordNetUri parse_synset_argument(const std::string& text) {
  if (text.rfind("http", 0) == 0) return parse_wordnet_uri(text);
  return imagenet_to_uri(parse_imagenet_id(text));
}

inline std::string join_qids(const std::vector<QId>& qids) {
  std::string out;
  for (const auto& q : qids) out += (out.empty() ? "" : ",") + q.to_string();
  return out.empty() ? "-" : out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link ImageNet synsets to Wikidata items through WordNet 3.0 LOD URIs", "synsetlink"};
  app.require_subcommand(1);
  app.fallthrough();

  SourceOptions src;
  auto* endpoint_opt = app.add_option("--endpoint", src.endpoint_url, "SPARQL endpoint URL (live mode)");
  auto* fixtures_opt = app.add_option("--fixtures", src.fixtures_dir, "Recorded fixture directory (offline mode)");
  auto* snapshot_opt = app.add_option("--snapshot", src.snapshot_dir, "Resolve from a TSV snapshot directory");
  endpoint_opt->excludes(fixtures_opt)->excludes(snapshot_opt);
  fixtures_opt->excludes(snapshot_opt);

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between ImageNet IDs and WordNet URIs");
  std::string convert_input, convert_style;
  convert->add_option("id", convert_input, "ImageNet ID or WordNet URI")->required();
  convert->add_option("--style", convert_style, "URI style")->check(CLI::IsMember({"legacy", "canonical"}));

  // resolve
  auto* resolve = app.add_subcommand("resolve", "List the Wikidata items linked to a synset");
  std::string resolve_input;
  resolve->add_option("id", resolve_input, "ImageNet ID or WordNet URI")->required();

  // label
  auto* label = app.add_subcommand("label", "Resolve a synset and print its localized label");
  std::string label_input, label_lang = "en";
  std::vector<std::string> label_fallback{"en"};
  label->add_option("id", label_input, "ImageNet ID or WordNet 3.0 URI")->required();
  label->add_option("--lang", label_lang, "Label language")->required();
  label->add_option("--fallback", label_fallback, "Fallback languages, in order")->delimiter(',');

  // stats
  auto* stats = app.add_subcommand("stats", "Linkage statistics (fixtures by default)");
  std::string stats_what, stats_csv, stats_prefix{kWordNet30Prefix};
  std::int64_t stats_threshold = 3;
  stats->add_option("what", stats_what, "count|histogram|cooccurrence|babelnet|items|low")
      ->required()
      ->check(CLI::IsMember({"count", "histogram", "cooccurrence", "babelnet", "items", "low"}));
  stats->add_option("--csv", stats_csv, "Write the histogram CSV to this path");
  stats->add_option("--prefix", stats_prefix, "WordNet URI prefix to count");
  stats->add_option("--threshold", stats_threshold, "Statement threshold for 'low'");

  // audit
  auto* audit = app.add_subcommand("audit", "Validate a match table and report per-status counts");
  std::string audit_path, audit_format = "text";
  bool audit_check = false;
  audit->add_option("table", audit_path, "Match table TSV")->required();
  audit->add_option("--format", audit_format, "Report format")->check(CLI::IsMember({"text", "tsv"}));
  audit->add_flag("--check", audit_check, "Also flag disambiguation and divergent matches against the data source");

  // snapshot
  auto* snapshot = app.add_subcommand("snapshot", "Write or verify an offline snapshot");
  std::string snapshot_action, snapshot_dir, snapshot_classes;
  std::vector<std::string> snapshot_langs{"en"};
  snapshot->add_option("action", snapshot_action, "save|load")->required()->check(CLI::IsMember({"save", "load"}));
  snapshot->add_option("dir", snapshot_dir, "Snapshot directory")->required();
  snapshot->add_option("--classes", snapshot_classes, "Class index to snapshot (default: bundled list)");
  snapshot->add_option("--langs", snapshot_langs, "Label languages to capture")->delimiter(',');

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP label service");
  int serve_port = 8080;
  std::string serve_host = "127.0.0.1", serve_classes;
  serve->add_option("--port", serve_port, "Listen port (0 picks a free port)");
  serve->add_option("--host", serve_host, "Listen address");
  serve->add_option("--classes", serve_classes, "Class index for index= lookups (default: bundled list)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*convert) {
      if (convert_input.rfind("http", 0) == 0) {
        WordNetUri uri = parse_wordnet_uri(convert_input);
        if (convert_style.empty()) {
          out << uri_to_imagenet(uri).to_string() << '\n';
        } else {
          out << normalize_uri(uri, *parse_style(convert_style)).to_string() << '\n';
        }
      } else {
        auto style = convert_style.empty() ? UriStyle::legacy : *parse_style(convert_style);
        out << imagenet_to_uri(parse_imagenet_id(convert_input), WordNetVersion::wn30, style).to_string() << '\n';
      }
      return kOk;
    }

    if (*resolve) {
      WordNetUri uri = parse_synset_argument(resolve_input);
      auto resolver = make_resolver(src, err);
      auto res = resolver->resolve_synset(uri);
      out << normalize_uri(uri, UriStyle::legacy).to_string() << '\t' << join_qids(res.qids) << '\n';
      return kOk;
    }

    if (*label) {
      WordNetUri uri = parse_synset_argument(label_input);
      ImageNetId id = uri_to_imagenet(uri);
      auto resolver = make_resolver(src, err);
      std::string lang = parse_language_tag(label_lang);
      auto resolved = resolver->resolve_and_label(id, lang, label_fallback);
      out << make_label_response(resolved, lang).to_json().dump() << '\n';
      return kOk;
    }

    if (*stats) {
      if (!src.snapshot_dir.empty()) throw UsageError("stats needs --fixtures or --endpoint, not --snapshot");
      bool live = false;
      auto endpoint = make_endpoint(src, true, err, &live);
      if (live) err << "warning: live results drift over time and are informational only\n";
      if (stats_what == "count") {
        out << count_linked(*endpoint, stats_prefix) << '\n';
      } else if (stats_what == "cooccurrence") {
        out << cooccurrence(*endpoint, stats_prefix) << '\n';
      } else if (stats_what == "babelnet") {
        out << babelnet_usage(*endpoint) << '\n';
      } else if (stats_what == "histogram") {
        auto h = histogram(*endpoint, stats_prefix);
        if (stats_csv.empty()) {
          out << format_histogram_csv(h);
        } else {
          emit_histogram_csv(h, stats_csv);
          err << "wrote " << h.bins().size() << " bins (" << h.total_items() << " items) to " << stats_csv << '\n';
        }
        if (auto m = h.mode()) err << "mode: " << *m << '\n';
      } else if (stats_what == "items") {
        for (const auto& c : statement_counts(*endpoint, stats_prefix)) out << c.qid.to_string() << '\t' << c.count << '\n';
      } else {
        auto counts = statement_counts(*endpoint, stats_prefix);
        for (const auto& q : low_statement_items(counts, stats_threshold)) out << q.to_string() << '\n';
      }
      return kOk;
    }

    if (*audit) {
      auto records = load_match_table(audit_path);
      auto report = audit_report(records);
      out << (audit_format == "tsv" ? format_report_tsv(report) : format_report_text(report));
      if (audit_check) {
        if (!src.snapshot_dir.empty()) throw UsageError("audit --check needs --fixtures or --endpoint");
        auto endpoint = make_endpoint(src, false, err);
        Resolver resolver(endpoint);
        for (const auto& s : flag_suspect_matches(records, *endpoint, resolver))
          out << "flag\t" << to_string(s.reason) << '\t' << s.record.imagenet.to_string() << '\t'
              << (s.record.qid ? s.record.qid->to_string() : "-") << '\n';
      }
      return kOk;
    }

    if (*snapshot) {
      if (snapshot_action == "load") {
        auto store = snapshot_load(snapshot_dir);
        out << "mapping rows: " << store.mapping_rows() << "\nlabels: " << store.labels().size() << '\n';
        return kOk;
      }
      auto classes = load_class_index(snapshot_classes.empty() ? default_classes_path(src) : snapshot_classes);
      auto resolver = make_resolver(src, err);
      SnapshotStore store;
      for (const auto& entry : classes.entries()) {
        auto res = resolver->resolve_synset(entry.imagenet);
        for (const auto& q : res.qids) {
          store.add_mapping(entry.imagenet.synset(), q);
          for (const auto& lang : snapshot_langs)
            if (auto l = resolver->get_label(q, lang)) store.add_label(*l);
        }
      }
      snapshot_save(store, snapshot_dir);
      out << "mapping rows: " << store.mapping_rows() << "\nlabels: " << store.labels().size() << '\n';
      return kOk;
    }

    if (*serve) {
      auto resolver = make_resolver(src, err);
      std::optional<ClassIndex> classes;
      std::string classes_path = serve_classes.empty() ? default_classes_path(src) : serve_classes;
      if (std::filesystem::exists(classes_path)) {
        classes = load_class_index(classes_path);
      } else {
        err << "no class index at " << classes_path << "; index= lookups disabled\n";
      }
      LabelService service(*resolver, classes ? &*classes : nullptr);
      httplib::Server server;
      service.mount(server);
      int port = serve_port;
      if (port == 0) {
        port = server.bind_to_any_port(serve_host);
      } else if (!server.bind_to_port(serve_host, port)) {
        port = -1;
      }
      if (port < 0) {
        err << "cannot listen on " << serve_host << ':' << serve_port << '\n';
        return kUsage;
      }
      err << "listening on http://" << serve_host << ':' << port << '\n';
      out << port << std::endl;
      server.listen_after_bind();
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EndpointError& e) {
    err << "endpoint error: " << e.what() << '\n';
    return kEndpointFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsage;
}

}  // namespace synsetlink::cli
