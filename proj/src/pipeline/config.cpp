#include "pillars/pipeline/config.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "pillars/core/types.hpp"

namespace pillars::pipeline {

namespace {

template <class E, std::size_t N>
using Table = std::array<std::pair<E, std::string_view>, N>;

constexpr Table<Modality, 3> kModality{{
    {Modality::image_only, "image_only"}, {Modality::text_only, "text_only"}, {Modality::multimodal, "multimodal"}}};
constexpr Table<Ranking, 2> kRanking{{{Ranking::embedding, "embedding"}, {Ranking::time, "time"}}};
constexpr Table<ManipulationMode, 4> kMode{{{ManipulationMode::no_detector, "no_detector"},
                                             {ManipulationMode::detector, "detector"},
                                             {ManipulationMode::perfect_detector, "perfect_detector"},
                                             {ManipulationMode::oracle, "oracle"}}};
constexpr Table<PromptStyle, 3> kStyle{
    {{PromptStyle::gpt4, "gpt4"}, {PromptStyle::llava, "llava"}, {PromptStyle::llama2, "llama2"}}};

template <class E, std::size_t N>
std::string_view name_of(const Table<E, N>& t, E v) {
    for (const auto& [value, name] : t)
        if (value == v) return name;
    return "?";
}

template <class E, std::size_t N>
std::optional<E> lookup(const Table<E, N>& t, std::string_view s) {
    for (const auto& [value, name] : t)
        if (name == s) return value;
    return std::nullopt;
}

template <class E, class Parse>
void read_enum(const Json& j, const char* key, E& out, Parse parse) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    if (!it->is_string()) throw std::invalid_argument(fmt::format("{}: expected a string", key));
    auto v = parse(it->template get<std::string>());
    if (!v) throw std::invalid_argument(fmt::format("{}: unknown value '{}'", key, it->template get<std::string>()));
    out = *v;
}

template <class T>
void read_number(const Json& j, const char* key, T& out) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    if (!it->is_number()) throw std::invalid_argument(fmt::format("{}: expected a number", key));
    out = it->template get<T>();
}

}  // namespace

std::string_view to_string(Modality v) { return name_of(kModality, v); }
std::string_view to_string(Ranking v) { return name_of(kRanking, v); }
std::string_view to_string(ManipulationMode v) { return name_of(kMode, v); }
std::string_view to_string(PromptStyle v) { return name_of(kStyle, v); }
std::optional<Modality> parse_modality(std::string_view s) { return lookup(kModality, s); }
std::optional<Ranking> parse_ranking(std::string_view s) { return lookup(kRanking, s); }
std::optional<ManipulationMode> parse_manipulation_mode(std::string_view s) { return lookup(kMode, s); }
std::optional<PromptStyle> parse_prompt_style(std::string_view s) { return lookup(kStyle, s); }

std::optional<std::string> RunConfig::validate() const {
    if (top_k < 1) return fmt::format("top_k must be >= 1 (got {})", top_k);
    if (shots < 0 || shots > 2) return fmt::format("shots must be 0, 1 or 2 (got {})", shots);
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        return fmt::format("temperature must be >= 0 (got {})", temperature);
    if (max_tokens < 1) return "max_tokens must be >= 1";
    if (max_prompt_tokens < 1) return "max_prompt_tokens must be >= 1";
    if (shots > 0 && modality == Modality::text_only)
        return "demonstrations need images; use shots 0 with text_only";
    if (prompt_style == PromptStyle::llama2 && modality != Modality::text_only)
        return "the llama2 prompt style is text-only";
    return std::nullopt;
}

Json to_json(const RunConfig& c) {
    Json j;
    j["modality"] = to_string(c.modality);
    j["shots"] = c.shots;
    j["top_k"] = c.top_k;
    j["temperature"] = c.temperature;
    j["ranking"] = to_string(c.ranking);
    j["manipulation_mode"] = to_string(c.manipulation_mode);
    j["prompt_style"] = to_string(c.prompt_style);
    j["model"] = c.model;
    j["max_tokens"] = c.max_tokens;
    j["max_prompt_tokens"] = c.max_prompt_tokens;
    j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    return j;
}

RunConfig run_config_from_json(const Json& j, RunConfig c) {
    if (!j.is_object()) throw std::invalid_argument("run: expected an object");
    read_enum(j, "modality", c.modality, parse_modality);
    read_enum(j, "ranking", c.ranking, parse_ranking);
    read_enum(j, "manipulation_mode", c.manipulation_mode, parse_manipulation_mode);
    read_enum(j, "prompt_style", c.prompt_style, parse_prompt_style);
    read_number(j, "shots", c.shots);
    read_number(j, "top_k", c.top_k);
    read_number(j, "temperature", c.temperature);
    read_number(j, "max_tokens", c.max_tokens);
    read_number(j, "max_prompt_tokens", c.max_prompt_tokens);
    if (auto it = j.find("model"); it != j.end()) {
        if (!it->is_string()) throw std::invalid_argument("model: expected a string");
        c.model = it->get<std::string>();
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (it->is_null()) c.seed.reset();
        else if (it->is_number_integer()) c.seed = it->get<std::int64_t>();
        else throw std::invalid_argument("seed: expected an integer");
    }
    return c;
}

std::string resolve_image_ref(std::string_view ref, const std::filesystem::path& root) {
    if (is_well_formed_url(ref)) return std::string(ref);
    std::filesystem::path p{std::string(ref)};
    if (p.is_absolute() || root.empty()) return p.string();
    return (root / p).lexically_normal().string();
}

}  // namespace pillars::pipeline
