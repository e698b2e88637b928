#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/serialize.hpp"

namespace pillars::evidence {

enum class MatchKind { full, partial };

struct RisResult {
    std::string page_url;
    MatchKind match_kind = MatchKind::partial;
    std::vector<std::string> matched_image_urls;
    friend bool operator==(const RisResult&, const RisResult&) = default;
};

std::string_view to_string(MatchKind k);
Json to_json(const RisResult& r);
/// Throws std::invalid_argument on schema errors or a malformed page_url.
RisResult ris_result_from_json(const Json& j);
/// Parses a wire response {"results": [...]}.
std::vector<RisResult> ris_response_from_json(const Json& j);

class RisProvider {
public:
    virtual ~RisProvider() = default;
    /// Throws backends::BackendError on failure.
    virtual std::vector<RisResult> search(std::string_view image_ref, int max_results) = 0;
};

/// Reads a JSON map from image key to {"results": [...]}. An image ref is
/// looked up as given, then by file name, then by file name without
/// extension. Unknown images have no results.
class FixtureRisProvider : public RisProvider {
public:
    explicit FixtureRisProvider(const std::filesystem::path& map_file);
    explicit FixtureRisProvider(std::map<std::string, std::vector<RisResult>> map);
    std::vector<RisResult> search(std::string_view image_ref, int max_results) override;

private:
    std::map<std::string, std::vector<RisResult>> map_;
};

/// POST {image, max_results} to `endpoint`. Local files are sent base64
/// encoded, anything else as a URL string.
class HttpRisProvider : public RisProvider {
public:
    HttpRisProvider(std::string endpoint, std::chrono::seconds timeout = std::chrono::seconds(30));
    std::vector<RisResult> search(std::string_view image_ref, int max_results) override;

private:
    std::string endpoint_;
    std::chrono::seconds timeout_;
};

inline constexpr int kDefaultMaxUrls = 50;

struct RetrievalConfig {
    int max_urls = kDefaultMaxUrls;
    std::set<std::string> fc_domain_blocklist;
    bool strict_undated = false;
    std::filesystem::path cache_dir;

    std::optional<std::string> validate() const;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds base_delay{500};
    double factor = 2.0;
};

class RetrievalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Provider results truncated to cfg.max_urls, provider order kept. Retryable
/// provider errors back off exponentially; the last failure is rethrown as
/// RetrievalError.
std::vector<RisResult> ris_search(std::string_view image_ref, RisProvider& provider, const RetrievalConfig& cfg,
                                  const RetryPolicy& retry = {});

}  // namespace pillars::evidence
