#pragma once

#include <map>
#include <string>
#include <vector>

#include "pillars/core/types.hpp"

namespace pillars::metrics {

inline constexpr std::size_t kNdcgCutoff = 10;
inline constexpr std::size_t kRankingTargetTokens = 512;

/// nDCG over the first min(kNdcgCutoff, |ranked|) positions with gain rel_i
/// and discount log2(i+1). 1.0 when the ideal DCG is zero. Throws
/// std::invalid_argument when a ranked id has no relevance.
double ndcg(const std::vector<std::string>& ranked, const std::map<std::string, double>& relevance,
            std::size_t cutoff = kNdcgCutoff);

/// Graded relevance of each item: RougeL of its first 512 body tokens
/// against the gold answer.
std::map<std::string, double> ranking_target(const std::vector<EvidenceItem>& evidence, const std::string& gold_answer);

}  // namespace pillars::metrics
