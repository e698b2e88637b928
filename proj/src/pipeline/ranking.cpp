#include "pillars/pipeline/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pillars/core/strings.hpp"
#include "pillars/pipeline/config.hpp"

namespace pillars::pipeline {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw backends::BackendError("embedding dimensions differ", false);
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / std::sqrt(na * nb);
}

std::string evidence_embedding_text(const EvidenceItem& item) {
    std::vector<std::string> parts;
    if (item.title) parts.push_back(*item.title);
    if (item.description) parts.push_back(*item.description);
    auto body = strings::first_tokens(item.body_text, kSnippetTokens);
    if (!body.empty()) parts.push_back(std::move(body));
    return strings::join(parts, "\n");
}

namespace {

std::vector<EvidenceItem> by_retrieval_rank(std::vector<EvidenceItem> items) {
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.retrieval_rank < b.retrieval_rank; });
    return items;
}

}  // namespace

std::vector<EvidenceItem> rank_embedding(const std::string& image_ref, const std::vector<EvidenceItem>& items,
                                         backends::EmbedBackend& embed, std::vector<std::string>* failed) {
    auto ordered = by_retrieval_rank(items);
    if (ordered.empty()) return ordered;
    const auto image = embed.embed(backends::EmbedKind::image, image_ref);

    struct Scored {
        EvidenceItem item;
        std::optional<double> sim;
    };
    std::vector<Scored> scored;
    scored.reserve(ordered.size());
    for (auto& it : ordered) {
        std::optional<double> sim;
        try {
            sim = cosine(image, embed.embed(backends::EmbedKind::text, evidence_embedding_text(it)));
        } catch (const std::exception&) {
            if (failed) failed->push_back(it.id());
        }
        scored.push_back({std::move(it), sim});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.sim.has_value() != b.sim.has_value()) return a.sim.has_value();
        return a.sim && *a.sim > *b.sim;
    });
    std::vector<EvidenceItem> out;
    out.reserve(scored.size());
    for (auto& s : scored) out.push_back(std::move(s.item));
    return out;
}

std::vector<EvidenceItem> rank_time(const std::vector<EvidenceItem>& items) {
    auto out = by_retrieval_rank(items);
    std::stable_sort(out.begin(), out.end(), [](const EvidenceItem& a, const EvidenceItem& b) {
        if (a.publication_date.has_value() != b.publication_date.has_value()) return a.publication_date.has_value();
        if (!a.publication_date) return false;
        return days_since_epoch(a.publication_date->first_day()) < days_since_epoch(b.publication_date->first_day());
    });
    return out;
}

std::vector<ImageCase> select_demonstrations(const std::string& image_ref, const std::vector<ImageCase>& train,
                                             int n, backends::EmbedBackend& embed,
                                             const std::filesystem::path& image_root,
                                             std::optional<std::string>* warning) {
    if (n <= 0 || train.empty()) return {};
    std::vector<std::pair<double, const ImageCase*>> scored;
    try {
        const auto query = embed.embed(backends::EmbedKind::image, image_ref);
        for (const auto& c : train)
            scored.emplace_back(
                cosine(query, embed.embed(backends::EmbedKind::image, resolve_image_ref(c.image_ref, image_root))),
                &c);
    } catch (const std::exception& e) {
        if (warning) *warning = std::string("demonstration selection failed: ") + e.what();
        return {};
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->id < b.second->id;
    });
    std::vector<ImageCase> out;
    for (std::size_t i = 0; i < scored.size() && static_cast<int>(i) < n; ++i) out.push_back(*scored[i].second);
    return out;
}

std::vector<double> MemoEmbedBackend::embed(backends::EmbedKind kind, std::string_view content) {
    std::pair<int, std::string> key{static_cast<int>(kind), std::string(content)};
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    auto v = inner_.embed(kind, content);
    std::lock_guard lock(mu_);
    memo_.emplace(std::move(key), v);
    return v;
}

}  // namespace pillars::pipeline
