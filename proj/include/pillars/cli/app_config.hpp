#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "pillars/builder/harvest.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/evidence/ris.hpp"
#include "pillars/pipeline/config.hpp"

namespace pillars::cli {

/// Bad flags, bad config files, unresolvable paths. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs besides its own flags. Loaded from a JSON file
/// whose relative paths resolve against the file's directory; see README
/// for the keys.
struct AppConfig {
    std::filesystem::path corpus = "corpus.jsonl";
    std::filesystem::path cache_dir = ".pillars-cache";
    bool use_cache = true;
    std::filesystem::path gazetteer;
    std::filesystem::path blocklist;
    /// Relative image refs in the corpus resolve against this.
    std::filesystem::path image_root = ".";

    /// Service root of the model adapter; `endpoints` overrides it per
    /// service (chat, embed, classify, score, ris, archive).
    std::string backend_url;
    std::map<std::string, std::string> endpoints;

    bool mock = false;
    std::filesystem::path mock_dir;
    std::filesystem::path mock_images;
    std::filesystem::path mock_web;

    pipeline::RunConfig run;
    int repeat_runs = 3;
    unsigned threads = 4;
    unsigned scrape_threads = 4;
    int max_urls = evidence::kDefaultMaxUrls;
    bool strict_undated = false;
    int fetch_delay_ms = 1000;
    int retry_attempts = 3;
    int retry_delay_ms = 500;

    builder::HarvestConfig harvest;
    std::optional<std::filesystem::path> exclusions;

    /// Service root for `service`, or empty when none is configured.
    std::string endpoint(const std::string& service) const;
};

/// Reads and validates a config file. Throws ConfigError.
AppConfig load_app_config(const std::filesystem::path& path);
/// Same, from parsed JSON with relative paths resolved against `base_dir`.
AppConfig app_config_from_json(const Json& j, const std::filesystem::path& base_dir);

/// Checks invariants and that the paths `needs` names exist.
struct ConfigNeeds {
    bool corpus = false;
    bool gazetteer = false;
    bool blocklist = false;
};
void validate(const AppConfig& cfg, const ConfigNeeds& needs);

}  // namespace pillars::cli
