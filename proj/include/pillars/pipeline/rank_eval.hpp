#pragma once

#include <map>
#include <string>
#include <vector>

#include "pillars/core/serialize.hpp"
#include "pillars/pipeline/runner.hpp"

namespace pillars::pipeline {

struct PillarRanking {
    Pillar pillar = Pillar::source;
    double embedding = 0.0;
    double time = 0.0;
    std::size_t cases = 0;
};

/// One counted case: both orders and, per scored pillar, the target
/// relevance of every item
struct CaseRanking {
    std::string case_id;
    std::vector<std::string> embedding_order;
    std::vector<std::string> time_order;
    std::vector<std::pair<Pillar, std::map<std::string, double>>> targets;
};

/// Mean nDCG of the embedding and chronological rankings against the
/// RougeL target, per generated pillar.
struct RankingEvaluation {
    std::string split;
    std::vector<PillarRanking> pillars;
    /// Cases with at least two usable evidence items.
    std::size_t cases = 0;
    std::vector<CaseRanking> per_case;
    std::vector<std::string> warnings;
};

/// Retrieves evidence for each case of `split` (through the cache when the
/// context has one), ranks the usable items both ways and scores each
/// pillar whose gold answer is present. Cases with fewer than two usable
/// items are skipped since any order is ideal.
RankingEvaluation evaluate_rankings(const std::vector<ImageCase>& corpus, Split split, const PipelineContext& ctx,
                                    Backends& backends, unsigned threads = 0);

Json to_json(const RankingEvaluation& e);
std::string render_ranking_table(const RankingEvaluation& e);

}  // namespace pillars::pipeline
