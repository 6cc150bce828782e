#pragma once

// HTTP label-resolution service:
//   GET /v1/label?synset=<nID>&lang=<tag>[&fallback=<tag,...>]
//   GET /v1/label?index=<k>&lang=<tag>            (needs a class index)
//   GET /v1/health

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "synsetlink/endpoint.hpp"
#include "synsetlink/identifiers.hpp"
#include "synsetlink/ilsvrc.hpp"
#include "synsetlink/resolver.hpp"

namespace synsetlink {

struct LabelResponse {
  std::string synset;
  std::optional<QId> qid;
  std::optional<std::string> label;
  std::string lang;  // language of the label when found, else the requested one
  bool cache_hit = false;
  bool multiplicity = false;

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"synset", synset},
            {"qid", qid ? nlohmann::json(qid->to_string()) : nlohmann::json(nullptr)},
            {"label", label ? nlohmann::json(*label) : nlohmann::json(nullptr)},
            {"lang", lang},
            {"cache", cache_hit ? "hit" : "miss"},
            {"multiplicity", multiplicity}};
  }
};

inline LabelResponse make_label_response(const LabeledResolution& r, const std::string& requested_lang) {
  LabelResponse out;
  out.synset = r.synset.to_string();
  out.qid = r.qid;
  out.lang = requested_lang;
  if (r.label) {
    out.label = r.label->label;
    out.lang = r.label->language;
  }
  out.cache_hit = r.cache_hit;
  out.multiplicity = r.multiplicity;
  return out;
}

struct HttpReply {
  int status = 200;
  std::string body;
};

inline std::vector<std::string> split_language_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    if (!item.empty()) out.push_back(parse_language_tag(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

class LabelService {
 public:
  using Params = std::multimap<std::string, std::string>;

  explicit LabelService(Resolver& resolver, const ClassIndex* classes = nullptr,
                        std::vector<std::string> default_fallback = {"en"})
      : resolver_(resolver), classes_(classes), default_fallback_(std::move(default_fallback)) {}

  HttpReply handle_label(const Params& params) const {
    auto param = [&](const std::string& name) -> std::optional<std::string> {
      auto it = params.find(name);
      if (it == params.end()) return std::nullopt;
      return it->second;
    };
    try {
      auto synset_text = param("synset");
      auto index_text = param("index");
      if (synset_text.has_value() == index_text.has_value())
        return error(400, "exactly one of 'synset' or 'index' is required");

      std::optional<ImageNetId> id;
      if (synset_text) {
        id = parse_imagenet_id(*synset_text);
      } else {
        if (!classes_) return error(400, "index lookups need a class index");
        auto n = detail::parse_int64(*index_text);
        if (!n || *n < 0) return error(400, "index must be a non-negative integer");
        id = classes_->index_to_id(static_cast<std::size_t>(*n));
      }

      std::string lang = parse_language_tag(param("lang").value_or("en"));
      std::vector<std::string> fallback = default_fallback_;
      if (auto f = param("fallback")) fallback = split_language_list(*f);

      auto resolved = resolver_.resolve_and_label(*id, lang, fallback);
      return {200, make_label_response(resolved, lang).to_json().dump()};
    } catch (const IdError& e) {
      return error(400, e.what());
    } catch (const ClassIndexError& e) {
      return error(400, e.what());
    } catch (const EndpointError& e) {
      return error(502, e.what());
    }
  }

  static HttpReply handle_health() { return {200, R"({"status":"ok"})"}; }

  void mount(httplib::Server& server) const {
    server.Get("/v1/label", [this](const httplib::Request& req, httplib::Response& res) {
      Params params(req.params.begin(), req.params.end());
      write(res, handle_label(params));
    });
    server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) { write(res, handle_health()); });
  }

 private:
  static HttpReply error(int status, const std::string& message) {
    return {status, nlohmann::json{{"error", message}}.dump()};
  }

  static void write(httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json; charset=utf-8");
  }

  Resolver& resolver_;
  const ClassIndex* classes_;
  std::vector<std::string> default_fallback_;
};

}  // namespace synsetlink
