#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/result.hpp"
#include "pillars/evidence/cache.hpp"
#include "pillars/evidence/fetch.hpp"
#include "pillars/evidence/filters.hpp"
#include "pillars/evidence/ris.hpp"
#include "pillars/pipeline/config.hpp"

namespace pillars::pipeline {

/// Non-owning handles to every service a run may call. Each must be safe to
/// use from several threads. Unused ones may be null (e.g. no classifier
/// outside the detector mode).
struct Backends {
    evidence::RisProvider* ris = nullptr;
    evidence::Fetcher* fetcher = nullptr;
    backends::ChatBackend* chat = nullptr;
    backends::EmbedBackend* embed = nullptr;
    backends::ClassifierBackend* classifier = nullptr;
};

struct PipelineContext {
    RunConfig cfg;
    evidence::RetrievalConfig retrieval;
    evidence::Blocklist blocklist;
    /// Relative image refs in the corpus are resolved against this.
    std::filesystem::path image_root;
    /// Persists RIS results, pages, chat responses and finished cases.
    const evidence::EvidenceCache* cache = nullptr;
    /// Demonstration pool.
    std::vector<ImageCase> train;
    evidence::RetryPolicy retry;
    unsigned scrape_threads = 4;
};

/// Evidence for one image after both retrieval restrictions.
struct Retrieval {
    std::vector<evidence::RisResult> ris;
    std::vector<EvidenceItem> scraped;
    /// Survivors of filter_temporal and filter_fc_domains, any status.
    std::vector<EvidenceItem> surviving;
    std::vector<StageEvent> trace;
    std::vector<StageEvent> errors;

    /// Surviving items with scrape_status ok, in retrieval order.
    std::vector<EvidenceItem> usable() const;
};

/// RIS, scraping and filtering for `image_ref` (already resolved).
/// Never throws; failures land in `errors`.
Retrieval retrieve_evidence(const std::string& image_ref, const DateValue& fc_date, const PipelineContext& ctx,
                            Backends& backends);

/// Full baseline for one case. Stage failures are recorded in the result;
/// the function itself only throws for programming errors.
CaseResult run_case(const ImageCase& c, const PipelineContext& ctx, Backends& backends);

/// Cache key identifying a case under the current configuration.
std::string case_fingerprint(const ImageCase& c, const PipelineContext& ctx);

struct SplitRunOptions {
    unsigned threads = 0;
    /// Called after each case finishes (or is replayed from the cache),
    /// serialized across workers.
    std::function<void(const CaseResult&, bool from_cache)> on_case_done;
};

/// run_case over every case of `split`, results sorted by case id. With a
/// cache in the context, finished cases are stored as they complete and
/// replayed on the next call, so an interrupted run resumes where it
/// stopped.
std::vector<CaseResult> run_split(const std::vector<ImageCase>& corpus, Split split, const PipelineContext& ctx,
                                  Backends& backends, const SplitRunOptions& opts = {});

/// Stores chat responses in the cache under the "chat" namespace, keyed
/// by the request (including seed and temperature).
class CachingChatBackend : public backends::ChatBackend {
public:
    CachingChatBackend(backends::ChatBackend& inner, const evidence::EvidenceCache& cache)
        : inner_(inner), cache_(cache) {}
    backends::ChatResponse chat(const backends::ChatRequest& req) override;

private:
    backends::ChatBackend& inner_;
    const evidence::EvidenceCache& cache_;
};

}  // namespace pillars::pipeline
