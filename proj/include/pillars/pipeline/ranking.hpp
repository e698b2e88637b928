#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/types.hpp"

namespace pillars::pipeline {

double cosine(const std::vector<double>& a, const std::vector<double>& b);

/// Text embedded for an evidence item: title, description and the first
/// kSnippetTokens tokens of the body, one per line.
std::string evidence_embedding_text(const EvidenceItem& item);

/// Sorts by descending cosine between the image embedding and each item's
/// text embedding; ties keep retrieval_rank order. Items whose embedding
/// fails go last (in retrieval order) and their ids are appended to
/// `failed`. A failure to embed the image itself propagates.
std::vector<EvidenceItem> rank_embedding(const std::string& image_ref, const std::vector<EvidenceItem>& items,
                                         backends::EmbedBackend& embed, std::vector<std::string>* failed = nullptr);

/// Oldest first; undated items last. Ties and undated items follow
/// retrieval_rank.
std::vector<EvidenceItem> rank_time(const std::vector<EvidenceItem>& items);

/// The n train cases whose image embeddings are closest to the query image,
/// ties by case id. Case image refs are resolved against `image_root`. A
/// backend failure yields no demonstrations and sets `warning`.
std::vector<ImageCase> select_demonstrations(const std::string& image_ref, const std::vector<ImageCase>& train,
                                             int n, backends::EmbedBackend& embed,
                                             const std::filesystem::path& image_root = {},
                                             std::optional<std::string>* warning = nullptr);

/// Memoizes another backend's vectors. Thread-safe; failures are not cached.
class MemoEmbedBackend : public backends::EmbedBackend {
public:
    explicit MemoEmbedBackend(backends::EmbedBackend& inner) : inner_(inner) {}
    std::vector<double> embed(backends::EmbedKind kind, std::string_view content) override;

private:
    backends::EmbedBackend& inner_;
    std::mutex mu_;
    std::map<std::pair<int, std::string>, std::vector<double>> memo_;
};

}  // namespace pillars::pipeline
