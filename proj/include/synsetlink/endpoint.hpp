#pragma once

// Execution of SparqlQuery values against a WDQS-compatible service. The
// transport is a Backend (live HTTP or recorded fixtures); Endpoint adds
// request spacing, retries with exponential backoff and result parsing.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "synsetlink/clock.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

inline constexpr std::string_view kDefaultEndpointUrl = "https://query.wikidata.org/sparql";
inline constexpr std::string_view kSparqlResultsMediaType = "application/sparql-results+json";
/// Queries longer than this are sent as a POST form instead of a GET.
inline constexpr std::size_t kPostThreshold = 2000;

struct EndpointConfig {
  std::string base_url{kDefaultEndpointUrl};
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds min_request_interval{1'000};
  std::string user_agent = "synsetlink/1.0 (https://github.com/synsetlink/synsetlink)";

  void validate() const {
    if (base_url.empty()) throw std::invalid_argument("endpoint base_url is empty");
    if (timeout.count() <= 0) throw std::invalid_argument("endpoint timeout must be positive");
    if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
    if (backoff_base.count() < 0) throw std::invalid_argument("backoff_base must be >= 0");
    if (min_request_interval.count() < 0) throw std::invalid_argument("min_request_interval must be >= 0");
  }

  /// Live defaults, with SYNSETLINK_ENDPOINT overriding the public WDQS URL.
  static EndpointConfig from_environment() {
    EndpointConfig config;
    if (const char* url = std::getenv("SYNSETLINK_ENDPOINT"); url != nullptr && *url != '\0') config.base_url = url;
    return config;
  }

  /// Settings for a fixture directory: no spacing, no retries.
  static EndpointConfig for_fixtures() {
    EndpointConfig config;
    config.base_url = "fixture:";
    config.max_retries = 0;
    config.min_request_interval = std::chrono::milliseconds{0};
    return config;
  }
};

enum class EndpointErrorKind { network, http_status, malformed_body, timeout, rate_limited };

inline std::string_view to_string(EndpointErrorKind kind) {
  switch (kind) {
    case EndpointErrorKind::network: return "network";
    case EndpointErrorKind::http_status: return "http_status";
    case EndpointErrorKind::malformed_body: return "malformed_body";
    case EndpointErrorKind::timeout: return "timeout";
    case EndpointErrorKind::rate_limited: return "rate_limited";
  }
  return "unknown";
}

class EndpointError : public std::runtime_error {
 public:
  EndpointError(EndpointErrorKind kind, std::string detail, int status = 0)
      : std::runtime_error(describe(kind, detail, status)), kind_(kind), status_(status), detail_(std::move(detail)) {}

  [[nodiscard]] EndpointErrorKind kind() const noexcept { return kind_; }
  /// HTTP status for http_status and rate_limited; 0 otherwise.
  [[nodiscard]] int status() const noexcept { return status_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string describe(EndpointErrorKind kind, const std::string& detail, int status) {
    std::string s(to_string(kind));
    if (status != 0) s += "(" + std::to_string(status) + ")";
    return s + ": " + detail;
  }

  EndpointErrorKind kind_;
  int status_;
  std::string detail_;
};

struct RawResponse {
  int status = 0;
  std::string body;
  std::string detail;
};

/// One round trip for a query. Implementations return any HTTP status as a
/// RawResponse and throw EndpointError only for network or timeout failures.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual RawResponse fetch(const SparqlQuery& query) = 0;
};

class Endpoint {
 public:
  Endpoint(EndpointConfig config, std::shared_ptr<Backend> backend,
           std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>())
      : config_(std::move(config)), backend_(std::move(backend)), clock_(std::move(clock)) {
    config_.validate();
    if (!backend_) throw std::invalid_argument("endpoint needs a backend");
  }

  Endpoint(const Endpoint&) = delete;
  Endpoint& operator=(const Endpoint&) = delete;

  [[nodiscard]] const EndpointConfig& config() const noexcept { return config_; }

  /// Runs the query and parses rows with its shape. Retries 429 and 5xx up
  /// to max_retries times, sleeping backoff_base * 2^attempt in between.
  std::vector<ResultRow> execute(const SparqlQuery& query) {
    for (int attempt = 0;; ++attempt) {
      wait_for_dispatch_slot();
      attempts_.fetch_add(1, std::memory_order_relaxed);
      RawResponse response = backend_->fetch(query);

      if (response.status >= 200 && response.status < 300) {
        try {
          return parse_results(response.body, query.shape);
        } catch (const SparqlError& e) {
          throw EndpointError(EndpointErrorKind::malformed_body, e.what());
        }
      }

      bool retryable = response.status == 429 || (response.status >= 500 && response.status < 600);
      if (!retryable || attempt >= config_.max_retries) {
        std::string detail = response.detail.empty() ? snippet(response.body) : response.detail;
        if (response.status == 429)
          throw EndpointError(EndpointErrorKind::rate_limited, detail, response.status);
        throw EndpointError(EndpointErrorKind::http_status, detail, response.status);
      }
      clock_->sleep_for(config_.backoff_base * (std::int64_t{1} << attempt));
    }
  }

  /// Number of backend round trips dispatched so far.
  [[nodiscard]] std::uint64_t request_count() const noexcept { return attempts_.load(std::memory_order_relaxed); }

 private:
  // Reserves the next dispatch time under the lock, sleeps outside it.
  void wait_for_dispatch_slot() {
    Clock::time_point slot;
    {
      std::lock_guard lock(rate_mutex_);
      slot = clock_->now();
      if (last_dispatch_ && slot < *last_dispatch_ + config_.min_request_interval)
        slot = *last_dispatch_ + config_.min_request_interval;
      last_dispatch_ = slot;
    }
    clock_->sleep_until(slot);
  }

  static std::string snippet(const std::string& body) {
    constexpr std::size_t max = 200;
    return body.size() <= max ? body : body.substr(0, max) + "...";
  }

  EndpointConfig config_;
  std::shared_ptr<Backend> backend_;
  std::shared_ptr<Clock> clock_;
  std::mutex rate_mutex_;
  std::optional<Clock::time_point> last_dispatch_;
  std::atomic<std::uint64_t> attempts_{0};
};

}  // namespace synsetlink
