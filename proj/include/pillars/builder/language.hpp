#pragma once

#include <string_view>

namespace pillars::builder {

/// Share of the text's letter trigrams (words padded with spaces) that belong
/// to a fixed profile of frequent English trigrams. Words in non-Latin
/// scripts count towards the total but never match.
double english_trigram_score(std::string_view text);

inline constexpr double kEnglishThreshold = 0.17;
inline constexpr std::size_t kMinTrigrams = 20;

/// Conservative: short texts and mixed texts below the threshold are
/// rejected.
bool looks_english(std::string_view text);

}  // namespace pillars::builder
