#include "pillars/pipeline/rank_eval.hpp"

#include <mutex>

#include <fmt/format.h>

#include "pillars/core/parallel.hpp"
#include "pillars/metrics/ranking.hpp"
#include "pillars/pipeline/prompt.hpp"
#include "pillars/pipeline/ranking.hpp"

namespace pillars::pipeline {

namespace {

std::vector<std::string> ids(const std::vector<EvidenceItem>& items) {
    std::vector<std::string> out;
    for (const auto& e : items) out.push_back(e.id());
    return out;
}

struct CaseScores {
    bool counted = false;
    CaseRanking detail;
    std::vector<std::pair<double, double>> by_pillar = std::vector<std::pair<double, double>>(4, {-1.0, -1.0});
    std::string warning;
};

}  // namespace

RankingEvaluation evaluate_rankings(const std::vector<ImageCase>& corpus, Split split, const PipelineContext& ctx,
                                    Backends& backends, unsigned threads) {
    if (!backends.embed) throw std::invalid_argument("ranking evaluation needs an embedding backend");
    std::vector<const ImageCase*> todo;
    for (const auto& c : corpus)
        if (c.split == split) todo.push_back(&c);

    std::vector<CaseScores> scores(todo.size());
    parallel_for(todo.size(), threads, [&](std::size_t i) {
        const auto& c = *todo[i];
        auto usable = retrieve_evidence(c.image_ref, c.fc_publication_date, ctx, backends).usable();
        if (usable.size() < 2) return;
        std::vector<EvidenceItem> by_embedding;
        try {
            std::vector<std::string> failed;
            by_embedding = rank_embedding(resolve_image_ref(c.image_ref, ctx.image_root), usable, *backends.embed, &failed);
            if (!failed.empty()) scores[i].warning = fmt::format("{}: {} evidence embeddings failed", c.id, failed.size());
        } catch (const std::exception& e) {
            scores[i].warning = fmt::format("{}: skipped, {}", c.id, e.what());
            return;
        }
        const auto by_time = rank_time(usable);
        scores[i].counted = true;
        scores[i].detail = {c.id, ids(by_embedding), ids(by_time), {}};
        for (std::size_t p = 0; p < 4; ++p) {
            const auto pillar = kGeneratedPillars[p];
            if (!c.gold.present(pillar)) continue;
            const auto target = metrics::ranking_target(usable, render_gold_answer(c.gold, pillar));
            scores[i].detail.targets.emplace_back(pillar, target);
            scores[i].by_pillar[p] = {metrics::ndcg(ids(by_embedding), target), metrics::ndcg(ids(by_time), target)};
        }
    });

    RankingEvaluation out;
    out.split = std::string(to_string(split));
    for (auto p : kGeneratedPillars) out.pillars.push_back({p, 0.0, 0.0, 0});
    for (const auto& s : scores) {
        if (!s.warning.empty()) out.warnings.push_back(s.warning);
        if (!s.counted) continue;
        ++out.cases;
        out.per_case.push_back(s.detail);
        for (std::size_t p = 0; p < 4; ++p) {
            if (s.by_pillar[p].first < 0) continue;
            out.pillars[p].embedding += s.by_pillar[p].first;
            out.pillars[p].time += s.by_pillar[p].second;
            ++out.pillars[p].cases;
        }
    }
    for (auto& p : out.pillars)
        if (p.cases > 0) {
            p.embedding /= double(p.cases);
            p.time /= double(p.cases);
        }
    return out;
}

Json to_json(const RankingEvaluation& e) {
    Json j{{"split", e.split}, {"cases", e.cases}, {"pillars", Json::array()}, {"warnings", e.warnings}};
    for (const auto& p : e.pillars)
        j["pillars"].push_back({{"pillar", to_string(p.pillar)},
                               {"cases", p.cases},
                               {"embedding", p.cases ? Json(p.embedding) : Json(nullptr)},
                               {"time", p.cases ? Json(p.time) : Json(nullptr)}});
    j["per_case"] = Json::array();
    for (const auto& c : e.per_case) {
        Json t = Json::object();
        for (const auto& [pillar, rel] : c.targets) t[std::string(to_string(pillar))] = rel;
        j["per_case"].push_back(
            {{"case_id", c.case_id}, {"embedding", c.embedding_order}, {"time", c.time_order}, {"targets", t}});
    }
    return j;
}

std::string render_ranking_table(const RankingEvaluation& e) {
    auto cell = [](const PillarRanking& p, double v) { return p.cases ? fmt::format("{:>12.2f}", 100.0 * v) : fmt::format("{:>12}", "-"); };
    std::string head = fmt::format("{:<10}", "nDCG (%)");
    std::string time = fmt::format("{:<10}", "Time");
    std::string emb = fmt::format("{:<10}", "Embedding");
    std::string n = fmt::format("{:<10}", "cases");
    for (const auto& p : e.pillars) {
        auto name = std::string(to_string(p.pillar));
        name[0] = static_cast<char>(std::toupper(name[0]));
        head += fmt::format("{:>12}", name);
        time += cell(p, p.time);
        emb += cell(p, p.embedding);
        n += fmt::format("{:>12}", p.cases);
    }
    return head + "\n" + time + "\n" + emb + "\n" + n + "\n";
}

}  // namespace pillars::pipeline
