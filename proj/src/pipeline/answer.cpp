#include "pillars/pipeline/answer.hpp"

#include <algorithm>
#include <thread>

#include "pillars/core/date_text.hpp"
#include "pillars/core/strings.hpp"

namespace pillars::pipeline {

Generation generate_answer(const Prompt& prompt, backends::ChatBackend& chat, const RunConfig& cfg,
                           const std::filesystem::path& image_root, const evidence::RetryPolicy& retry) {
    backends::ChatRequest req;
    backends::ChatMessage msg{"user", prompt.text, {}};
    for (const auto& img : prompt.images) msg.images.push_back(resolve_image_ref(img, image_root));
    req.messages.push_back(std::move(msg));
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_tokens;
    req.seed = cfg.seed;

    auto delay = retry.base_delay;
    const int attempts = std::max(1, retry.attempts);
    for (int attempt = 1;; ++attempt) {
        try {
            auto resp = chat.chat(req);
            return {resp.text, resp.refused, attempt};
        } catch (const backends::BackendError& e) {
            if (!e.retryable() || attempt >= attempts) throw;
        }
        std::this_thread::sleep_for(delay);
        delay = std::chrono::milliseconds(static_cast<long>(static_cast<double>(delay.count()) * retry.factor));
    }
}

namespace {

std::string clean(std::string_view raw) {
    auto s = strings::trim(raw);
    for (std::string_view cue : {"answer:", "assistant:"})
        if (strings::starts_with_ci(s, cue)) s = strings::trim(s.substr(cue.size()));
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        s = strings::trim(s.substr(1, s.size() - 2));
    return strings::collapse_whitespace(s);
}

std::string strip_period(std::string s) {
    while (!s.empty() && s.back() == '.') s.pop_back();
    return std::string(strings::trim(s));
}

}  // namespace

PillarAnswers parse_answer(std::string_view raw, Pillar pillar) {
    PillarAnswers out;
    const auto text = clean(raw);
    if (is_abstention(text)) return out;
    switch (pillar) {
        case Pillar::source: out.source = text; break;
        case Pillar::motivation: out.motivation = text; break;
        case Pillar::date: out.date = normalize_date_text(text); break;
        case Pillar::location:
            for (const auto& part : strings::split(text, ",;")) {
                auto t = strip_period(std::string(strings::trim(part)));
                if (!t.empty() && !is_abstention(t)) out.location.push_back({t, std::nullopt, std::nullopt});
            }
            break;
    }
    return out;
}

void merge_answer(PillarAnswers& into, const PillarAnswers& from, Pillar pillar) {
    switch (pillar) {
        case Pillar::source: into.source = from.source; break;
        case Pillar::date: into.date = from.date; break;
        case Pillar::location: into.location = from.location; break;
        case Pillar::motivation: into.motivation = from.motivation; break;
    }
}

Detection detect_manipulation(const std::string& image_ref, backends::ClassifierBackend& classifier) {
    Detection d;
    try {
        auto c = classifier.classify(image_ref);
        d.label = c.label;
        d.score = c.score;
        d.manipulated = strings::lower(strings::trim(c.label)) == "manipulated";
    } catch (const std::exception& e) {
        d.label = "non_manipulated";
        d.warning = std::string("classifier unavailable, assuming non_manipulated: ") + e.what();
    }
    return d;
}

std::optional<std::string> identify_original(const std::vector<EvidenceItem>& items) {
    const EvidenceItem* best = nullptr;
    for (const auto& it : items) {
        if (it.scrape_status != ScrapeStatus::ok || it.image_urls.empty() || !it.publication_date) continue;
        if (!best) {
            best = &it;
            continue;
        }
        auto a = days_since_epoch(it.publication_date->first_day());
        auto b = days_since_epoch(best->publication_date->first_day());
        if (a < b || (a == b && it.retrieval_rank < best->retrieval_rank)) best = &it;
    }
    if (!best) return std::nullopt;
    return best->image_urls.front();
}

}  // namespace pillars::pipeline
