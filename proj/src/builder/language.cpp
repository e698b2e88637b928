#include "pillars/builder/language.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace pillars::builder {

namespace {

// Frequent English trigrams, chosen to be rare in the Romance and Germanic
// languages the fact-checking sites also publish in.
constexpr std::array<std::string_view, 58> kProfile = {
    " th", "the", "he ", " an", "and", "nd ", " of", "of ", " to", "to ", "ing", "ng ", "ed ", " wa", "was",
    "as ", " is", "is ", " wh", "hat", "tha", "at ", " wi", "wit", "ith", "th ", " fo", "for", " it", "it ",
    " be", " by", "by ", " ha", "her", "ere", " on", "on ", " in", "in ", "se ", " sh", "sho", " we", "we ",
    " fr", "fro", "rom", "om ", " ar", "are", "thi", "his", " ye", " yo", "you", "ly ", " wo"};

bool is_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80; }

bool in_profile(std::string_view tri) {
    return std::find(kProfile.begin(), kProfile.end(), tri) != kProfile.end();
}

struct Counts {
    std::size_t total = 0;
    std::size_t hits = 0;
};

Counts count(std::string_view text) {
    Counts c;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_letter(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::string word = " ";
        while (i < text.size() && is_letter(static_cast<unsigned char>(text[i]))) {
            char ch = text[i++];
            if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
            word += ch;
        }
        word += ' ';
        for (std::size_t k = 0; k + 3 <= word.size(); ++k) {
            ++c.total;
            if (in_profile(std::string_view(word).substr(k, 3))) ++c.hits;
        }
    }
    return c;
}

}  // namespace

double english_trigram_score(std::string_view text) {
    const auto c = count(text);
    return c.total == 0 ? 0.0 : double(c.hits) / double(c.total);
}

bool looks_english(std::string_view text) {
    const auto c = count(text);
    return c.total >= kMinTrigrams && double(c.hits) / double(c.total) >= kEnglishThreshold;
}

}  // namespace pillars::builder
