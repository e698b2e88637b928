#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/backends/interfaces.hpp"
#include "pillars/core/types.hpp"
#include "pillars/evidence/ris.hpp"
#include "pillars/pipeline/config.hpp"
#include "pillars/pipeline/prompt.hpp"

namespace pillars::pipeline {

struct Generation {
    std::string text;
    bool refused = false;
    int attempts = 0;
};

/// One completion for `prompt` at cfg.temperature, with prompt images
/// resolved against `image_root`. Retryable backend errors are retried per
/// `retry` (three attempts: the first call and two retries); the last error
/// propagates.
Generation generate_answer(const Prompt& prompt, backends::ChatBackend& chat, const RunConfig& cfg,
                           const std::filesystem::path& image_root = {}, const evidence::RetryPolicy& retry = {});

/// Parses a raw answer into a PillarAnswers with only `pillar` filled.
/// Abstentions leave it absent; a leading "Answer:" is dropped. Dates go
/// through normalize_date_text, locations split on ',' and ';'.
PillarAnswers parse_answer(std::string_view raw, Pillar pillar);

/// Copies `pillar`'s field from `from` into `into`.
void merge_answer(PillarAnswers& into, const PillarAnswers& from, Pillar pillar);

struct Detection {
    bool manipulated = false;
    double score = 0.0;
    std::string label;
    /// Set when the classifier failed and the image was assumed genuine.
    std::optional<std::string> warning;
};

Detection detect_manipulation(const std::string& image_ref, backends::ClassifierBackend& classifier);

/// First image URL of the oldest-dated item among ok items that carry
/// images and a date; ties go to the lower retrieval_rank.
std::optional<std::string> identify_original(const std::vector<EvidenceItem>& items);

}  // namespace pillars::pipeline
