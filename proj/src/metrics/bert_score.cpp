#include "pillars/metrics/bert_score.hpp"

#include <stdexcept>

#include "pillars/core/strings.hpp"

namespace pillars::metrics {

std::vector<double> bert_score(const std::vector<std::string>& preds, const std::vector<std::string>& refs,
                               backends::ScoringBackend& backend) {
    if (preds.size() != refs.size()) throw std::invalid_argument("bert_score: preds and refs differ in length");
    std::vector<double> out(preds.size(), 0.0);
    std::vector<std::size_t> idx;
    std::vector<std::string> c, r;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (strings::trim(preds[i]).empty()) continue;
        idx.push_back(i);
        c.push_back(preds[i]);
        r.push_back(refs[i]);
    }
    if (idx.empty()) return out;
    auto scores = backend.score(c, r);
    if (scores.size() != idx.size())
        throw backends::BackendError("scoring backend returned " + std::to_string(scores.size()) + " scores for " +
                                         std::to_string(idx.size()) + " pairs",
                                     false);
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = scores[k];
    return out;
}

}  // namespace pillars::metrics
