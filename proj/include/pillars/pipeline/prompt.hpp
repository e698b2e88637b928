#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pillars/core/types.hpp"
#include "pillars/pipeline/config.hpp"

namespace pillars::pipeline {

/// The question asked for each generated pillar.
std::string_view pillar_question(Pillar p);

inline constexpr std::string_view kImageInstruction =
    "You are given an image. Your task is to answer a question about the image.";
inline constexpr std::string_view kEvidenceInstruction =
    "You are given online articles that used a certain image. Your task is to answer a question about the image.";

/// A demonstration's answer as shown in few-shot prompts, rendered from the
/// gold annotation. Absent answers read "Not enough information".
std::string render_gold_answer(const PillarAnswers& gold, Pillar p);

struct Prompt {
    std::string text;
    /// Image refs in the order their placeholders appear; the query image,
    /// when attached, is last.
    std::vector<std::string> images;
    /// One note per evidence snippet shortened to fit the token budget.
    std::vector<std::string> truncations;
};

/// Renders the prompt for one pillar:
///
///     <instruction>
///
///     Demonstration 1:
///     Image: <image 1>
///     Question: <question>
///     Answer: <gold answer>
///
///     Evidence 1:
///     Title: ...
///     Date: ...
///     Text: <first 512 body tokens>
///
///     Image: <image 2>
///     Question: <question>
///     Answer:
///
/// The evidence instruction is used whenever evidence is present. llava
/// prefixes "USER: " and ends with "ASSISTANT:"; llama2 wraps the
/// instruction in a system block and ends with "[/INST]". Throws
/// std::invalid_argument for evidence in image_only mode or an image in
/// text_only mode.
Prompt build_prompt(Pillar pillar, const RunConfig& cfg, const std::vector<EvidenceItem>& evidence,
                    const std::vector<ImageCase>& demos, const std::optional<std::string>& image);

}  // namespace pillars::pipeline
