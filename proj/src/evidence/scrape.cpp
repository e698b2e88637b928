#include "pillars/evidence/scrape.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "pillars/core/parallel.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/core/strings.hpp"
#include "pillars/evidence/extract.hpp"

namespace pillars::evidence {

namespace {

constexpr std::string_view kPageNamespace = "page";

bool looks_like_html(const std::string& content_type) {
    if (content_type.empty()) return true;
    auto ct = strings::lower(content_type);
    return ct.find("html") != std::string::npos || ct.find("xml") != std::string::npos;
}

}  // namespace

EvidenceItem scrape(const std::string& url, Fetcher& fetcher) {
    EvidenceItem item;
    item.url = url;
    item.hostname = url_hostname(url);
    if (!is_well_formed_url(url)) {
        item.scrape_status = ScrapeStatus::fetch_error;
        return item;
    }
    FetchResponse res;
    try {
        res = fetcher.fetch(url);
    } catch (const std::exception& e) {
        res = {};
        res.error = e.what();
    }
    if (!res.ok()) {
        const bool refused = res.status == 401 || res.status == 403 || res.status == 451;
        item.scrape_status = refused ? ScrapeStatus::blocked : ScrapeStatus::fetch_error;
        spdlog::debug("scrape {}: {}", url, res.error.empty() ? "HTTP " + std::to_string(res.status) : res.error);
        return item;
    }
    if (!looks_like_html(res.content_type)) {
        item.scrape_status = ScrapeStatus::extract_error;
        return item;
    }
    std::optional<ExtractedPage> page;
    try {
        page = extract_page(res.body, url);
    } catch (const std::exception& e) {
        spdlog::warn("extract {}: {}", url, e.what());
    }
    if (!page) {
        item.scrape_status = ScrapeStatus::extract_error;
        return item;
    }
    item.title = std::move(page->title);
    item.description = std::move(page->description);
    item.author = std::move(page->author);
    item.sitename = std::move(page->sitename);
    item.publication_date = page->publication_date;
    item.body_text = std::move(page->body_text);
    item.image_urls = std::move(page->image_urls);
    item.image_captions = std::move(page->image_captions);
    item.scrape_status = ScrapeStatus::ok;
    return item;
}

std::vector<EvidenceItem> scrape_all(const std::vector<RisResult>& results, Fetcher& fetcher,
                                     const ScrapeOptions& opts) {
    std::vector<EvidenceItem> out(results.size());
    parallel_for(results.size(), opts.threads, [&](std::size_t i) {
        const auto& url = results[i].page_url;
        std::optional<EvidenceItem> item;
        if (opts.cache) {
            if (auto hit = opts.cache->get(kPageNamespace, url)) {
                try {
                    item = evidence_from_json(Json::parse(*hit));
                } catch (const std::exception& e) {
                    spdlog::warn("cached page {} unreadable: {}", url, e.what());
                }
            }
        }
        if (!item) {
            item = scrape(url, fetcher);
            if (opts.cache && item->scrape_status != ScrapeStatus::fetch_error)
                opts.cache->put(kPageNamespace, url, dump_line(to_json(*item)));
        }
        std::vector<std::string> images = results[i].matched_image_urls;
        for (auto& u : item->image_urls)
            if (std::find(images.begin(), images.end(), u) == images.end()) images.push_back(std::move(u));
        item->image_urls = std::move(images);
        item->retrieval_rank = static_cast<int>(i) + 1;
        out[i] = std::move(*item);
    });
    return out;
}

}  // namespace pillars::evidence
