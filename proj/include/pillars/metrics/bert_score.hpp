#pragma once

#include <string>
#include <vector>

#include "pillars/backends/interfaces.hpp"

namespace pillars::metrics {

/// Per-pair F1 from the scoring backend. Pairs with an empty candidate score
/// 0 without a backend call. Backend failures propagate as BackendError.
std::vector<double> bert_score(const std::vector<std::string>& preds, const std::vector<std::string>& refs,
                               backends::ScoringBackend& backend);

}  // namespace pillars::metrics
