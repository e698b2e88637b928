#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pillars/core/serialize.hpp"

namespace pillars::pipeline {

enum class Modality { image_only, text_only, multimodal };
enum class Ranking { embedding, time };
enum class ManipulationMode { no_detector, detector, perfect_detector, oracle };
/// Special-token conventions of the chat models the prompts target.
enum class PromptStyle { gpt4, llava, llama2 };

inline constexpr int kDefaultTopK = 3;
inline constexpr double kDefaultTemperature = 0.2;
inline constexpr std::size_t kSnippetTokens = 512;

struct RunConfig {
    Modality modality = Modality::multimodal;
    int shots = 0;
    int top_k = kDefaultTopK;
    double temperature = kDefaultTemperature;
    Ranking ranking = Ranking::embedding;
    ManipulationMode manipulation_mode = ManipulationMode::no_detector;
    PromptStyle prompt_style = PromptStyle::gpt4;
    std::string model = "mock";
    int max_tokens = 256;
    /// Whitespace-token budget for one prompt; evidence is cut beyond it.
    std::size_t max_prompt_tokens = 3000;
    std::optional<std::int64_t> seed;

    std::optional<std::string> validate() const;
};

std::string_view to_string(Modality v);
std::string_view to_string(Ranking v);
std::string_view to_string(ManipulationMode v);
std::string_view to_string(PromptStyle v);
std::optional<Modality> parse_modality(std::string_view s);
std::optional<Ranking> parse_ranking(std::string_view s);
std::optional<ManipulationMode> parse_manipulation_mode(std::string_view s);
std::optional<PromptStyle> parse_prompt_style(std::string_view s);

Json to_json(const RunConfig& c);
/// Missing keys keep the values already in `base`. Throws
/// std::invalid_argument on unknown enum names or wrong types.
RunConfig run_config_from_json(const Json& j, RunConfig base = {});

/// URLs pass through; absolute paths pass through; anything else is taken
/// relative to `root`.
std::string resolve_image_ref(std::string_view ref, const std::filesystem::path& root);

}  // namespace pillars::pipeline
