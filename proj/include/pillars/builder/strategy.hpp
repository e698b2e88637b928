#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "pillars/core/types.hpp"

namespace pillars::builder {

struct StrategyMatch {
    std::set<VerificationStrategy> strategies;
    std::set<std::string> tools;
};

/// Phrase table: one `phrase<TAB>strategy[<TAB>tool]` per line, '#'
/// comments. Phrases match case-insensitively as substrings, so stems such
/// as "geolocat" work.
class StrategyDictionary {
public:
    struct Entry {
        std::string phrase;
        VerificationStrategy strategy;
        std::string tool;
    };

    static StrategyDictionary parse(std::string_view text);
    static StrategyDictionary load_file(const std::filesystem::path& path);
    /// resources/strategy_keywords.tsv
    static StrategyDictionary shipped();

    StrategyMatch detect(std::string_view body_text) const;
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

}  // namespace pillars::builder
