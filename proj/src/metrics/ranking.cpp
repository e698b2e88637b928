#include "pillars/metrics/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "pillars/core/strings.hpp"
#include "pillars/metrics/text.hpp"

namespace pillars::metrics {

double ndcg(const std::vector<std::string>& ranked, const std::map<std::string, double>& relevance,
            std::size_t cutoff) {
    std::vector<double> gains;
    gains.reserve(ranked.size());
    for (const auto& id : ranked) {
        auto it = relevance.find(id);
        if (it == relevance.end()) throw std::invalid_argument("ndcg: no relevance for '" + id + "'");
        gains.push_back(it->second);
    }
    const std::size_t k = std::min(cutoff, gains.size());
    auto dcg = [k](const std::vector<double>& g) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += g[i] / std::log2(double(i) + 2.0);
        return s;
    };
    auto ideal = gains;
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    const double idcg = dcg(ideal);
    if (idcg == 0.0) return 1.0;
    return std::min(1.0, dcg(gains) / idcg);
}

std::map<std::string, double> ranking_target(const std::vector<EvidenceItem>& evidence, const std::string& gold_answer) {
    std::map<std::string, double> rel;
    for (const auto& e : evidence) rel[e.id()] = rouge_l(strings::first_tokens(e.body_text, kRankingTargetTokens), gold_answer);
    return rel;
}

}  // namespace pillars::metrics
