#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pillars::metrics {

/// Porter (1980) suffix stripping as originally published. Input is
/// lowercased first; short words are not special-cased.
std::string porter_stem(std::string_view word);

/// LCS F-measure over normalized tokens; 0 when either side is empty.
double rouge_l(std::string_view pred, std::string_view ref);

struct MeteorParams {
    double alpha = 0.9;
    double beta = 3.0;
    double gamma = 0.5;
};

/// Unigram alignment in two stages, exact tokens then Porter stems. Within
/// each stage, the k-th unmatched occurrence of a token in the hypothesis
/// pairs with its k-th unmatched occurrence in the reference. No synonyms.
double meteor(std::string_view pred, std::string_view ref, const MeteorParams& params = {});

struct MeteorAlignment {
    std::vector<std::pair<std::size_t, std::size_t>> matches;  // (hyp, ref), sorted by hyp
    std::size_t chunks = 0;
};
MeteorAlignment meteor_align(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);

/// Length of the longest common subsequence.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace pillars::metrics
