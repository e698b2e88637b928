#include "pillars/builder/harvest.hpp"

#include <set>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"
#include "pillars/evidence/scrape.hpp"

namespace pillars::builder {

namespace {

std::string_view url_path(std::string_view url) {
    auto start = url.find("://");
    start = start == std::string_view::npos ? 0 : url.find('/', start + 3);
    if (start == std::string_view::npos) return {};
    auto path = url.substr(start);
    return path.substr(0, path.find_first_of("?#"));
}

}  // namespace

std::optional<std::string> HarvestConfig::validate() const {
    if (start_year > end_year) return fmt::format("start year {} is after end year {}", start_year, end_year);
    if (keywords.empty()) return std::string("no URL keywords");
    return std::nullopt;
}

bool url_has_keyword(std::string_view url, const std::vector<std::string>& keywords) {
    const auto path = strings::lower(url_path(url));
    for (const auto& k : keywords)
        if (!k.empty() && path.find(strings::lower(k)) != std::string::npos) return true;
    return false;
}

std::vector<std::string> filter_keyword_urls(const std::vector<std::string>& urls,
                                             const std::vector<std::string>& keywords) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& u : urls) {
        auto key = strings::trim(u);
        if (key.empty() || !url_has_keyword(key, keywords)) continue;
        if (seen.insert(std::string(key)).second) out.emplace_back(key);
    }
    return out;
}

Harvest collect_archive_urls(const HarvestConfig& cfg, backends::ArchiveBackend& archive) {
    if (auto err = cfg.validate()) throw std::invalid_argument(*err);
    Harvest h;
    std::vector<std::string> all;
    for (const auto& d : cfg.domains) {
        try {
            auto urls = archive.urls(d, cfg.start_year, cfg.end_year);
            h.archived += urls.size();
            all.insert(all.end(), urls.begin(), urls.end());
        } catch (const std::exception& e) {
            h.failures.push_back({d, e.what()});
        }
    }
    h.urls = filter_keyword_urls(all, cfg.keywords);
    return h;
}

FcArticle to_fc_article(const EvidenceItem& item) {
    FcArticle a;
    a.url = item.url;
    a.title = item.title;
    a.publication_date = item.publication_date;
    a.body_text = item.body_text;
    a.status = item.scrape_status;
    if (!item.image_urls.empty()) a.image_url = item.image_urls.front();
    return a;
}

FcArticle scrape_fc_article(const std::string& url, evidence::Fetcher& fetcher) {
    return to_fc_article(evidence::scrape(url, fetcher));
}

std::vector<FcArticle> scrape_fc_articles(const std::vector<std::string>& urls, evidence::Fetcher& fetcher,
                                          unsigned threads, const evidence::EvidenceCache* cache) {
    std::vector<evidence::RisResult> targets;
    for (const auto& u : urls) targets.push_back({u, evidence::MatchKind::full, {}});
    std::vector<FcArticle> out;
    for (const auto& item : evidence::scrape_all(targets, fetcher, {threads, cache})) out.push_back(to_fc_article(item));
    return out;
}

}  // namespace pillars::builder
