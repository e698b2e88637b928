#pragma once

#include <string>
#include <vector>

#include "pillars/core/types.hpp"
#include "pillars/evidence/cache.hpp"
#include "pillars/evidence/fetch.hpp"
#include "pillars/evidence/ris.hpp"

namespace pillars::evidence {

/// Fetches and extracts one page. Never throws: transport failures and HTTP
/// errors give fetch_error, 401/403/451 give blocked, non-HTML or
/// unparseable bodies give extract_error. retrieval_rank is left at 0.
EvidenceItem scrape(const std::string& url, Fetcher& fetcher);

struct ScrapeOptions {
    unsigned threads = 4;
    /// Optional; successful scrapes are stored under the "page" namespace.
    const EvidenceCache* cache = nullptr;
};

/// Scrapes every RIS result concurrently. Output order and retrieval_rank
/// (1-based) follow the input order. Images the RIS provider matched come
/// first in image_urls. Per-host pacing is the fetcher's job, so pass a
/// PoliteFetcher when talking to the network.
std::vector<EvidenceItem> scrape_all(const std::vector<RisResult>& results, Fetcher& fetcher,
                                     const ScrapeOptions& opts = {});

}  // namespace pillars::evidence
