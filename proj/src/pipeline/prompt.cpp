#include "pillars/pipeline/prompt.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "pillars/core/strings.hpp"

namespace pillars::pipeline {

std::string_view pillar_question(Pillar p) {
    switch (p) {
        case Pillar::source:
            return "Who is the source/author of the image? Answer with one or more person or entities in a few words.";
        case Pillar::date:
            return "When was the image taken? Answer with one or more dates in a few words.";
        case Pillar::location:
            return "Where was the image taken? Answer with one or more locations in a few words.";
        case Pillar::motivation:
            return "Why was the image taken? Answer in a few words.";
    }
    return "";
}

std::string render_gold_answer(const PillarAnswers& gold, Pillar p) {
    std::vector<std::string> parts;
    switch (p) {
        case Pillar::source:
            if (gold.source) parts.push_back(*gold.source);
            break;
        case Pillar::date:
            for (const auto& d : gold.date) parts.push_back(d.human());
            break;
        case Pillar::location:
            for (const auto& l : gold.location) parts.push_back(l.text);
            break;
        case Pillar::motivation:
            if (gold.motivation) parts.push_back(*gold.motivation);
            break;
    }
    return parts.empty() ? std::string(kNotEnoughInformation) : strings::join(parts, ", ");
}

namespace {

struct Snippet {
    std::vector<std::string> tokens;
    std::size_t keep = 0;
};

std::string render(std::string_view instruction, const std::vector<std::string>& demo_blocks,
                   const std::vector<EvidenceItem>& evidence, const std::vector<Snippet>& snippets,
                   const std::string& query_block, bool with_instruction) {
    std::vector<std::string> blocks;
    if (with_instruction) blocks.emplace_back(instruction);
    for (const auto& d : demo_blocks) blocks.push_back(d);
    for (std::size_t i = 0; i < evidence.size(); ++i) {
        const auto& e = evidence[i];
        std::vector<std::string> kept(snippets[i].tokens.begin(),
                                      snippets[i].tokens.begin() + static_cast<long>(snippets[i].keep));
        blocks.push_back(fmt::format("Evidence {}:\nTitle: {}\nDate: {}\nText: {}", i + 1, e.title.value_or(""),
                                     e.publication_date ? e.publication_date->human() : "Unknown",
                                     strings::join(kept, " ")));
    }
    blocks.push_back(query_block);
    return strings::join(blocks, "\n\n");
}

// Shortens the longest snippet first until the prompt fits, one token at a
// time among equally long snippets.
void fit_budget(std::vector<Snippet>& snippets, std::size_t fixed_tokens, std::size_t budget) {
    std::size_t total = fixed_tokens;
    for (const auto& s : snippets) total += s.keep;
    while (total > budget) {
        std::size_t best = snippets.size();
        for (std::size_t i = 0; i < snippets.size(); ++i)
            if (snippets[i].keep > 0 && (best == snippets.size() || snippets[i].keep > snippets[best].keep)) best = i;
        if (best == snippets.size()) return;
        std::size_t second = 0;
        for (std::size_t i = 0; i < snippets.size(); ++i)
            if (i != best) second = std::max(second, snippets[i].keep);
        std::size_t excess = total - budget;
        std::size_t cut = snippets[best].keep > second ? std::min(excess, snippets[best].keep - second) : 1;
        snippets[best].keep -= cut;
        total -= cut;
    }
}

}  // namespace

Prompt build_prompt(Pillar pillar, const RunConfig& cfg, const std::vector<EvidenceItem>& evidence,
                    const std::vector<ImageCase>& demos, const std::optional<std::string>& image) {
    if (cfg.modality == Modality::image_only && !evidence.empty())
        throw std::invalid_argument("image_only prompts take no evidence");
    if (cfg.modality == Modality::text_only && (image || !demos.empty()))
        throw std::invalid_argument("text_only prompts take no images");

    Prompt out;
    const auto question = pillar_question(pillar);
    const auto instruction = evidence.empty() ? kImageInstruction : kEvidenceInstruction;

    std::vector<std::string> demo_blocks;
    for (std::size_t i = 0; i < demos.size(); ++i) {
        out.images.push_back(demos[i].image_ref);
        demo_blocks.push_back(fmt::format("Demonstration {}:\nImage: <image {}>\nQuestion: {}\nAnswer: {}", i + 1,
                                          out.images.size(), question, render_gold_answer(demos[i].gold, pillar)));
    }
    std::string query_block;
    if (image) {
        out.images.push_back(*image);
        query_block = fmt::format("Image: <image {}>\n", out.images.size());
    }
    query_block += fmt::format("Question: {}", question);
    switch (cfg.prompt_style) {
        case PromptStyle::gpt4: query_block += "\nAnswer:"; break;
        case PromptStyle::llava: query_block += "\nASSISTANT:"; break;
        case PromptStyle::llama2: query_block += "\n[/INST]"; break;
    }
    const bool inline_instruction = cfg.prompt_style != PromptStyle::llama2;

    std::vector<Snippet> snippets;
    for (const auto& e : evidence) {
        Snippet s;
        s.tokens = strings::split(strings::first_tokens(e.body_text, kSnippetTokens), " \t\r\n");
        s.keep = s.tokens.size();
        snippets.push_back(std::move(s));
    }
    std::vector<std::size_t> full;
    for (const auto& s : snippets) full.push_back(s.keep);

    auto zeroed = snippets;
    for (auto& s : zeroed) s.keep = 0;
    std::size_t fixed = strings::count_tokens(render(instruction, demo_blocks, evidence, zeroed, query_block,
                                                     inline_instruction));
    if (!inline_instruction) fixed += strings::count_tokens(instruction) + 4;
    fit_budget(snippets, fixed, cfg.max_prompt_tokens);
    for (std::size_t i = 0; i < snippets.size(); ++i)
        if (snippets[i].keep < full[i])
            out.truncations.push_back(fmt::format("evidence {} truncated from {} to {} tokens", i + 1, full[i],
                                                  snippets[i].keep));

    auto body = render(instruction, demo_blocks, evidence, snippets, query_block, inline_instruction);
    switch (cfg.prompt_style) {
        case PromptStyle::gpt4: out.text = std::move(body); break;
        case PromptStyle::llava: out.text = "USER: " + body; break;
        case PromptStyle::llama2:
            out.text = fmt::format("<s>[INST] <<SYS>> {} <</SYS>>\n\n{}", instruction, body);
            break;
    }
    return out;
}

}  // namespace pillars::pipeline
