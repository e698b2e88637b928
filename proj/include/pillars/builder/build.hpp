#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pillars/builder/annotate.hpp"
#include "pillars/builder/harvest.hpp"
#include "pillars/builder/strategy.hpp"
#include "pillars/core/corpus.hpp"
#include "pillars/core/serialize.hpp"

namespace pillars::builder {

/// Corpus id from the last path segment of a URL: lowercase alphanumerics
/// and single dashes, at most 80 characters.
std::string slug_id(std::string_view url);

/// Lowercased title tokens joined by single spaces.
std::string normalized_title(std::string_view title);

struct DuplicateOf {
    std::string url;
    std::string kept_url;
};

/// Cross-domain duplicates: same normalized title or same image URL as an
/// article from another host. The earliest publication (then input order)
/// is kept. Returns the indices kept; `dropped` receives the pairs for
/// manual review.
std::vector<std::size_t> find_cross_domain_duplicates(const std::vector<FcArticle>& articles,
                                                      std::vector<DuplicateOf>* dropped);

struct BuildOptions {
    HarvestConfig harvest;
    SplitSpec splits;
    unsigned threads = 4;
    AnnotationPrompts prompts = AnnotationPrompts::shipped();
    StrategyDictionary strategies = StrategyDictionary::shipped();
    /// URLs excluded by hand (e.g. images stamped by the fact-checker).
    std::set<std::string> excluded_urls;
    /// Minimum spacing between annotation requests.
    std::chrono::milliseconds annotation_interval{0};
    const evidence::EvidenceCache* cache = nullptr;
};

struct BuildBackends {
    backends::ArchiveBackend* archive = nullptr;
    evidence::Fetcher* fetcher = nullptr;
    backends::ChatBackend* chat = nullptr;
};

struct Drop {
    std::string url;
    std::string reason;
    std::string detail;
};

/// Per-stage attrition. Every candidate URL ends up either in the corpus or
/// in exactly one drop, so candidates == cases + drops.size().
struct BuildReport {
    std::size_t archived = 0;
    std::size_t candidates = 0;
    std::vector<DomainFailure> domain_failures;
    std::vector<Drop> drops;
    std::vector<DuplicateOf> duplicates;
    std::map<Split, std::size_t> split_counts;
    /// Articles mentioning each verification tool, over the kept cases.
    std::map<std::string, std::size_t> tool_counts;
    std::vector<std::string> warnings;
    std::size_t cases = 0;

    std::map<std::string, std::size_t> drops_by_reason() const;
    bool balanced() const { return candidates == cases + drops.size(); }
};

Json to_json(const BuildReport& r);
std::string render_build_report(const BuildReport& r);

struct BuildResult {
    std::vector<ImageCase> cases;
    BuildReport report;
};

/// Harvest, scrape, language filter, duplicate filter, annotation and split
/// assignment. Output cases pass ImageCase::validate and are sorted by id.
BuildResult build_corpus(const BuildOptions& opts, BuildBackends& backends);

}  // namespace pillars::builder
