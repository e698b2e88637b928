#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/types.hpp"
#include "pillars/evidence/cache.hpp"
#include "pillars/evidence/fetch.hpp"

namespace pillars::builder {

struct HarvestConfig {
    /// Fact-checking organisations' hostnames.
    std::vector<std::string> domains;
    int start_year = 2019;
    int end_year = 2023;
    std::vector<std::string> keywords{"photo", "image", "picture"};

    std::optional<std::string> validate() const;
};

/// Case-insensitive keyword match on the URL path (host and query ignored).
bool url_has_keyword(std::string_view url, const std::vector<std::string>& keywords);

/// Keeps URLs matching a keyword, first occurrence only, order preserved.
std::vector<std::string> filter_keyword_urls(const std::vector<std::string>& urls,
                                             const std::vector<std::string>& keywords);

struct DomainFailure {
    std::string domain;
    std::string error;
};

struct Harvest {
    std::vector<std::string> urls;
    /// Archive entries seen before keyword filtering and deduplication.
    std::size_t archived = 0;
    std::vector<DomainFailure> failures;
};

/// Queries the archive once per domain; a failing domain is recorded and
/// the rest proceed.
Harvest collect_archive_urls(const HarvestConfig& cfg, backends::ArchiveBackend& archive);

struct FcArticle {
    std::string url;
    std::optional<std::string> title;
    std::optional<DateValue> publication_date;
    std::string body_text;
    std::optional<std::string> image_url;
    ScrapeStatus status = ScrapeStatus::ok;

    /// Scraped without error and names the checked image.
    bool usable() const { return status == ScrapeStatus::ok && image_url.has_value(); }
};

FcArticle to_fc_article(const EvidenceItem& item);
FcArticle scrape_fc_article(const std::string& url, evidence::Fetcher& fetcher);

/// Concurrent version; output follows input order. Successful pages are
/// cached when `cache` is set.
std::vector<FcArticle> scrape_fc_articles(const std::vector<std::string>& urls, evidence::Fetcher& fetcher,
                                          unsigned threads, const evidence::EvidenceCache* cache = nullptr);

}  // namespace pillars::builder
