#include "pillars/pipeline/runner.hpp"

#include <algorithm>
#include <mutex>

#include <fmt/format.h>

#include "pillars/core/hash.hpp"
#include "pillars/core/parallel.hpp"
#include "pillars/core/strings.hpp"
#include "pillars/evidence/scrape.hpp"
#include "pillars/pipeline/answer.hpp"
#include "pillars/pipeline/prompt.hpp"
#include "pillars/pipeline/ranking.hpp"

namespace pillars::pipeline {

namespace {

constexpr int kResultFormat = 1;

void log_decisions(std::vector<StageEvent>& trace, const char* stage, const evidence::FilterLog& log) {
    for (const auto& d : log)
        trace.push_back({stage, fmt::format("{} {} ({})", d.kept ? "kept" : "dropped", d.url, d.reason)});
}

std::vector<std::string> ids_of(const std::vector<EvidenceItem>& items) {
    std::vector<std::string> out;
    for (const auto& it : items) out.push_back(it.id());
    return out;
}

}  // namespace

std::vector<EvidenceItem> Retrieval::usable() const {
    std::vector<EvidenceItem> out;
    for (const auto& it : surviving)
        if (it.scrape_status == ScrapeStatus::ok) out.push_back(it);
    return out;
}

Retrieval retrieve_evidence(const std::string& image_ref, const DateValue& fc_date, const PipelineContext& ctx,
                            Backends& backends) {
    Retrieval out;
    const auto resolved = resolve_image_ref(image_ref, ctx.image_root);
    if (!backends.ris) {
        out.errors.push_back({"ris", "no reverse image search backend"});
        return out;
    }
    const auto key = fmt::format("{}#max={}", resolved, ctx.retrieval.max_urls);
    bool cached = false;
    if (ctx.cache) {
        if (auto hit = ctx.cache->get("ris", key)) {
            try {
                out.ris = evidence::ris_response_from_json(Json::parse(*hit));
                cached = true;
            } catch (const std::exception&) {
                out.ris.clear();
            }
        }
    }
    if (!cached) {
        try {
            out.ris = evidence::ris_search(resolved, *backends.ris, ctx.retrieval, ctx.retry);
        } catch (const std::exception& e) {
            out.errors.push_back({"ris", e.what()});
            out.trace.push_back({"ris", fmt::format("image={} failed", image_ref)});
            return out;
        }
        if (ctx.cache) {
            Json j{{"results", Json::array()}};
            for (const auto& r : out.ris) j["results"].push_back(evidence::to_json(r));
            ctx.cache->put("ris", key, dump_line(j));
        }
    }
    out.trace.push_back({"ris", fmt::format("image={} results={}", image_ref, out.ris.size())});

    if (!out.ris.empty()) {
        if (!backends.fetcher) {
            out.errors.push_back({"scrape", "no fetcher"});
            return out;
        }
        evidence::ScrapeOptions so;
        so.threads = ctx.scrape_threads;
        so.cache = ctx.cache;
        out.scraped = evidence::scrape_all(out.ris, *backends.fetcher, so);
        std::size_t ok = std::count_if(out.scraped.begin(), out.scraped.end(),
                                       [](const auto& it) { return it.scrape_status == ScrapeStatus::ok; });
        out.trace.push_back({"scrape", fmt::format("ok={} failed={}", ok, out.scraped.size() - ok)});
        for (const auto& it : out.scraped)
            if (it.scrape_status != ScrapeStatus::ok)
                out.trace.push_back({"scrape", fmt::format("{} {}", to_string(it.scrape_status), it.url)});
    }

    evidence::FilterLog tlog;
    auto kept = evidence::filter_temporal(out.scraped, fc_date, ctx.retrieval.strict_undated, &tlog);
    log_decisions(out.trace, "filter_temporal", tlog);
    evidence::FilterLog dlog;
    out.surviving = evidence::filter_fc_domains(kept, ctx.blocklist, &dlog);
    log_decisions(out.trace, "filter_fc_domains", dlog);
    return out;
}

CaseResult run_case(const ImageCase& c, const PipelineContext& ctx, Backends& backends) {
    const auto& cfg = ctx.cfg;
    CaseResult r;
    r.case_id = c.id;
    auto note = [&](std::string stage, std::string detail) { r.trace.push_back({std::move(stage), std::move(detail)}); };
    auto fail = [&](std::string stage, std::string message) {
        r.trace.push_back({stage, "error: " + message});
        r.errors.push_back({std::move(stage), std::move(message)});
    };
    auto absorb = [&](Retrieval& ev) {
        for (auto& t : ev.trace) r.trace.push_back(std::move(t));
        for (auto& e : ev.errors) fail(e.stage, e.detail);
        ev.trace.clear();
        ev.errors.clear();
    };
    auto resolve = [&](const std::string& ref) { return resolve_image_ref(ref, ctx.image_root); };

    std::string image = c.image_ref;
    note("image", image);

    bool identify = false;
    switch (cfg.manipulation_mode) {
        case ManipulationMode::no_detector:
            note("manipulation", "no_detector: detection skipped");
            break;
        case ManipulationMode::detector:
            if (!backends.classifier) {
                fail("manipulation", "no classifier backend; assuming non_manipulated");
                break;
            } else {
                auto d = detect_manipulation(resolve(image), *backends.classifier);
                if (d.warning) fail("manipulation", *d.warning);
                identify = d.manipulated;
                note("manipulation", fmt::format("detector: label={} score={:.4f}", d.label, d.score));
            }
            break;
        case ManipulationMode::perfect_detector:
            identify = c.image_type == ImageType::manipulated;
            note("manipulation", fmt::format("perfect_detector: gold image_type={} -> {}", to_string(c.image_type),
                                             identify ? "manipulated" : "non_manipulated"));
            break;
        case ManipulationMode::oracle:
            if (c.original_image_ref) {
                image = *c.original_image_ref;
                note("manipulation", "oracle: substituted original " + image);
            } else {
                note("manipulation", "oracle: no original reference, image kept");
            }
            break;
    }

    Retrieval ev;
    if (cfg.modality == Modality::image_only) {
        note("retrieval", "skipped (image_only)");
        if (identify) note("identify_original", "skipped (retrieval disabled)");
    } else {
        ev = retrieve_evidence(image, c.fc_publication_date, ctx, backends);
        absorb(ev);
        if (identify) {
            if (auto original = identify_original(ev.usable())) {
                image = *original;
                note("identify_original", "substituted original " + image);
                ev = retrieve_evidence(image, c.fc_publication_date, ctx, backends);
                absorb(ev);
            } else {
                note("identify_original", "no dated evidence image; image kept");
            }
        }
    }

    const auto usable = ev.usable();
    r.predicted.provenance = usable.empty() ? Provenance::unknown : Provenance::yes;
    note("provenance", fmt::format("{} (usable evidence={})", to_string(r.predicted.provenance), usable.size()));

    std::vector<EvidenceItem> ranked;
    if (!usable.empty()) {
        if (cfg.ranking == Ranking::time) {
            ranked = rank_time(usable);
        } else if (!backends.embed) {
            fail("rank", "no embedding backend; retrieval order used");
            ranked = usable;
        } else {
            try {
                std::vector<std::string> failed;
                ranked = rank_embedding(resolve(image), usable, *backends.embed, &failed);
                for (const auto& f : failed) fail("rank", "embedding failed for " + f + "; placed last");
            } catch (const std::exception& e) {
                fail("rank", std::string("image embedding failed, retrieval order used: ") + e.what());
                ranked = usable;
            }
        }
        if (ranked.size() > static_cast<std::size_t>(cfg.top_k)) ranked.resize(static_cast<std::size_t>(cfg.top_k));
        r.evidence_used = ids_of(ranked);
        note("rank", fmt::format("{}: {}", to_string(cfg.ranking), strings::join(r.evidence_used, " ")));
    }

    std::vector<ImageCase> demos;
    if (cfg.shots > 0) {
        std::vector<ImageCase> pool;
        for (const auto& t : ctx.train)
            if (t.id != c.id) pool.push_back(t);
        if (!backends.embed) {
            fail("demonstrations", "no embedding backend; zero-shot used");
        } else {
            std::optional<std::string> warning;
            demos = select_demonstrations(resolve(image), pool, cfg.shots, *backends.embed, ctx.image_root, &warning);
            if (warning) fail("demonstrations", *warning);
        }
        for (const auto& d : demos) r.demonstrations_used.push_back(d.id);
        note("demonstrations", strings::join(r.demonstrations_used, " "));
    }

    if (cfg.modality == Modality::text_only && ranked.empty()) {
        note("generate", "skipped: no evidence for a text-only prompt");
        return r;
    }
    if (!backends.chat) {
        fail("generate", "no chat backend");
        return r;
    }
    std::optional<CachingChatBackend> caching;
    backends::ChatBackend* chat = backends.chat;
    if (ctx.cache) chat = &caching.emplace(*backends.chat, *ctx.cache);

    if (cfg.modality != Modality::text_only) r.prompt_image = image;
    const std::vector<EvidenceItem> no_evidence;
    const auto& prompt_evidence = cfg.modality == Modality::image_only ? no_evidence : ranked;
    for (auto p : kGeneratedPillars) {
        const auto stage = fmt::format("generate.{}", to_string(p));
        auto prompt = build_prompt(p, cfg, prompt_evidence, demos, r.prompt_image);
        for (const auto& t : prompt.truncations) note(fmt::format("prompt.{}", to_string(p)), t);
        r.prompts[p] = prompt.text;
        try {
            auto gen = generate_answer(prompt, *chat, cfg, ctx.image_root, ctx.retry);
            r.raw_answers[p] = gen.text;
            if (gen.refused) {
                fail(stage, "refused");
                continue;
            }
            merge_answer(r.predicted, parse_answer(gen.text, p), p);
            note(stage, "ok");
        } catch (const std::exception& e) {
            fail(stage, e.what());
        }
    }
    return r;
}

std::string case_fingerprint(const ImageCase& c, const PipelineContext& ctx) {
    Json j;
    j["format"] = kResultFormat;
    j["case"] = to_json(c);
    j["run"] = to_json(ctx.cfg);
    j["max_urls"] = ctx.retrieval.max_urls;
    j["strict_undated"] = ctx.retrieval.strict_undated;
    j["blocklist"] = sha256_hex(strings::join({ctx.blocklist.patterns().begin(), ctx.blocklist.patterns().end()}, "\n"));
    if (ctx.cfg.shots > 0) {
        Json pool = Json::array();
        for (const auto& t : ctx.train) pool.push_back(t.id);
        j["train"] = pool;
    }
    return sha256_hex(dump_line(j));
}

std::vector<CaseResult> run_split(const std::vector<ImageCase>& corpus, Split split, const PipelineContext& ctx,
                                  Backends& backends, const SplitRunOptions& opts) {
    std::vector<const ImageCase*> todo;
    for (const auto& c : corpus)
        if (c.split == split) todo.push_back(&c);
    std::vector<CaseResult> results(todo.size());
    std::mutex mu;
    parallel_for(todo.size(), opts.threads, [&](std::size_t i) {
        const auto& c = *todo[i];
        const auto key = ctx.cache ? case_fingerprint(c, ctx) : std::string();
        bool replayed = false;
        if (ctx.cache) {
            if (auto hit = ctx.cache->get("result", key)) {
                try {
                    results[i] = result_from_json(Json::parse(*hit));
                    replayed = results[i].case_id == c.id;
                } catch (const std::exception&) {
                    replayed = false;
                }
            }
        }
        if (!replayed) {
            results[i] = run_case(c, ctx, backends);
            if (ctx.cache) ctx.cache->put("result", key, dump_line(to_json(results[i])));
        }
        if (opts.on_case_done) {
            std::lock_guard lock(mu);
            opts.on_case_done(results[i], replayed);
        }
    });
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
    return results;
}

backends::ChatResponse CachingChatBackend::chat(const backends::ChatRequest& req) {
    Json j;
    j["messages"] = Json::array();
    for (const auto& m : req.messages) j["messages"].push_back(Json{{"role", m.role}, {"text", m.text}, {"images", m.images}});
    j["temperature"] = req.temperature;
    j["max_tokens"] = req.max_tokens;
    j["seed"] = req.seed ? Json(*req.seed) : Json(nullptr);
    const auto key = dump_line(j);
    if (auto hit = cache_.get("chat", key)) {
        try {
            auto r = Json::parse(*hit);
            return {r.at("text").get<std::string>(), r.at("refused").get<bool>()};
        } catch (const std::exception&) {
        }
    }
    auto resp = inner_.chat(req);
    cache_.put("chat", key, dump_line(Json{{"text", resp.text}, {"refused", resp.refused}}));
    return resp;
}

}  // namespace pillars::pipeline
