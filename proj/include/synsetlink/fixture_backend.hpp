#pragma once

// Recorded-response backend. A fixture directory holds
// responses/<sha256 of the whitespace-canonicalized query>.json, so a
// recording survives reformatting of the query text.

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "synsetlink/endpoint.hpp"
#include "synsetlink/sparql.hpp"

namespace synsetlink {

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

inline std::string fixture_key(std::string_view query_text) { return sha256_hex(canonicalize_whitespace(query_text)); }

inline std::filesystem::path fixture_path(const std::filesystem::path& dir, std::string_view query_text) {
  return dir / "responses" / (fixture_key(query_text) + ".json");
}

class FixtureBackend final : public Backend {
 public:
  explicit FixtureBackend(std::filesystem::path directory) : directory_(std::move(directory)) {
    if (!std::filesystem::is_directory(directory_ / "responses"))
      throw std::invalid_argument("fixture directory has no responses/ subdirectory: " + directory_.string());
  }

  RawResponse fetch(const SparqlQuery& query) override {
    fetches_.fetch_add(1, std::memory_order_relaxed);
    auto path = fixture_path(directory_, query.text);
    std::ifstream in(path, std::ios::binary);
    if (!in) return {404, "", "fixture miss"};
    std::ostringstream body;
    body << in.rdbuf();
    return {200, body.str(), ""};
  }

  [[nodiscard]] const std::filesystem::path& directory() const noexcept { return directory_; }
  [[nodiscard]] std::uint64_t fetch_count() const noexcept { return fetches_.load(std::memory_order_relaxed); }

 private:
  std::filesystem::path directory_;
  std::atomic<std::uint64_t> fetches_{0};
};

/// Writes a response body for `query` into a fixture directory.
inline void record_fixture(const std::filesystem::path& dir, const SparqlQuery& query, std::string_view body) {
  std::filesystem::create_directories(dir / "responses");
  auto path = fixture_path(dir, query.text);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write fixture " + path.string());
  out << body << '\n';
}

}  // namespace synsetlink
