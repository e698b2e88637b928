#pragma once

#include <map>
#include <string>
#include <vector>

#include "pillars/core/serialize.hpp"
#include "pillars/core/types.hpp"

namespace pillars {

struct StageEvent {
    std::string stage;
    std::string detail;
    friend bool operator==(const StageEvent&, const StageEvent&) = default;
};

/// Output of running the pipeline on one case.
struct CaseResult {
    std::string case_id;
    PillarAnswers predicted;
    std::map<Pillar, std::string> raw_answers;
    /// Evidence ids in rank order, at most top_k.
    std::vector<std::string> evidence_used;
    std::vector<std::string> demonstrations_used;
    std::map<Pillar, std::string> prompts;
    /// Image reference attached to the prompts, if any.
    std::optional<std::string> prompt_image;
    std::vector<StageEvent> errors;
    std::vector<StageEvent> trace;

    bool has_error(std::string_view stage) const;
    friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

Json to_json(const CaseResult& r);
CaseResult result_from_json(const Json& j);

}  // namespace pillars
