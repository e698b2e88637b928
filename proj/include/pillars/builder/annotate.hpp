#pragma once

#include <optional>
#include <string>

#include "pillars/backends/interfaces.hpp"
#include "pillars/builder/harvest.hpp"
#include "pillars/core/serialize.hpp"
#include "pillars/core/types.hpp"

namespace pillars::builder {

struct Annotation {
    PillarAnswers answers;
    ClaimedContext claimed;
    std::optional<ImageType> image_type;
};

/// Maps the annotator's JSON object onto the corpus types. Sentinel values
/// and missing keys are absent. List-valued text fields are joined with
/// ", "; date and location lists become one value per item. Throws
/// std::invalid_argument when `j` is not an object.
Annotation annotation_from_json(const Json& j);

/// First JSON object in a reply, ignoring code fences and surrounding prose.
std::optional<Json> parse_json_reply(std::string_view reply);

struct AnnotationPrompts {
    /// Placeholders: {title}, {date}, {text}.
    std::string instruction;
    std::string repair;
    int max_tokens = 1024;

    /// resources/annotation_prompt.txt and resources/annotation_repair.txt
    static AnnotationPrompts shipped();
};

std::string render_annotation_prompt(const AnnotationPrompts& prompts, const FcArticle& article);

struct AnnotationOutcome {
    std::optional<Annotation> annotation;
    int attempts = 0;
    std::string error;
};

/// One request; a non-JSON reply earns one repair request carrying the
/// bad reply. Backend errors are reported, not thrown.
AnnotationOutcome extract_annotations(const FcArticle& article, backends::ChatBackend& chat,
                                      const AnnotationPrompts& prompts);

}  // namespace pillars::builder
