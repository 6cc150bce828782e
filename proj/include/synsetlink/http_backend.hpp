#pragma once

// Live WDQS transport over cpp-httplib. HTTPS needs the library built with
// CPPHTTPLIB_OPENSSL_SUPPORT (set by the CMake target when OpenSSL is found).

#include <chrono>
#include <string>
#include <string_view>

#include "httplib.h"
#include "synsetlink/endpoint.hpp"

namespace synsetlink {

/// Splits "https://host:port/path" into the client origin and request path.
struct UrlParts {
  std::string origin;
  std::string path;
};

inline UrlParts split_url(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw std::invalid_argument("endpoint URL lacks a scheme: " + std::string(url));
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(EndpointConfig config) : config_(std::move(config)), url_(split_url(config_.base_url)) {
    config_.validate();
  }

  RawResponse fetch(const SparqlQuery& query) override {
    httplib::Client client(url_.origin);
    auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    client.set_follow_location(true);

    httplib::Headers headers = {{"Accept", std::string(kSparqlResultsMediaType)},
                                {"User-Agent", config_.user_agent}};

    auto started = std::chrono::steady_clock::now();
    httplib::Result result;
    if (query.text.size() > kPostThreshold) {
      httplib::Params form = {{"query", query.text}};
      result = client.Post(url_.path, headers, form);
    } else {
      std::string sep = url_.path.find('?') == std::string::npos ? "?" : "&";
      result = client.Get(url_.path + sep + "query=" + httplib::detail::encode_query_param(query.text), headers);
    }

    if (!result) {
      auto err = result.error();
      auto elapsed = std::chrono::steady_clock::now() - started;
      // httplib reports read timeouts as plain read errors.
      bool timed_out = err == httplib::Error::ConnectionTimeout ||
                       (err == httplib::Error::Read && elapsed >= config_.timeout * 9 / 10);
      throw EndpointError(timed_out ? EndpointErrorKind::timeout : EndpointErrorKind::network,
                          httplib::to_string(err) + " contacting " + config_.base_url);
    }
    return {result->status, result->body, ""};
  }

 private:
  EndpointConfig config_;
  UrlParts url_;
};

}  // namespace synsetlink
