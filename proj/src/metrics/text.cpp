#include <algorithm>
#include <cmath>
#include <map>

#include "pillars/core/strings.hpp"
#include "pillars/metrics/text.hpp"

namespace pillars::metrics {

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double rouge_l(std::string_view pred, std::string_view ref) {
    const auto p = strings::normalize_tokens(pred);
    const auto r = strings::normalize_tokens(ref);
    if (p.empty() || r.empty()) return 0.0;
    const double lcs = double(lcs_length(p, r));
    if (lcs == 0.0) return 0.0;
    const double prec = lcs / double(p.size());
    const double rec = lcs / double(r.size());
    return 2.0 * prec * rec / (prec + rec);
}

namespace {

// Pairs the k-th unmatched hyp occurrence of each key with the k-th
// unmatched ref occurrence of the same key.
void match_stage(const std::vector<std::string>& hyp_keys, const std::vector<std::string>& ref_keys,
                 std::vector<bool>& hyp_used, std::vector<bool>& ref_used,
                 std::vector<std::pair<std::size_t, std::size_t>>& out) {
    std::map<std::string, std::vector<std::size_t>> ref_free;
    for (std::size_t j = 0; j < ref_keys.size(); ++j)
        if (!ref_used[j]) ref_free[ref_keys[j]].push_back(j);
    std::map<std::string, std::size_t> next;
    for (std::size_t i = 0; i < hyp_keys.size(); ++i) {
        if (hyp_used[i]) continue;
        auto it = ref_free.find(hyp_keys[i]);
        if (it == ref_free.end()) continue;
        auto& k = next[hyp_keys[i]];
        if (k >= it->second.size()) continue;
        const auto j = it->second[k++];
        hyp_used[i] = ref_used[j] = true;
        out.emplace_back(i, j);
    }
}

}  // namespace

MeteorAlignment meteor_align(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
    MeteorAlignment a;
    std::vector<bool> hu(hyp.size()), ru(ref.size());
    match_stage(hyp, ref, hu, ru, a.matches);
    std::vector<std::string> hs, rs;
    for (const auto& t : hyp) hs.push_back(porter_stem(t));
    for (const auto& t : ref) rs.push_back(porter_stem(t));
    match_stage(hs, rs, hu, ru, a.matches);
    std::sort(a.matches.begin(), a.matches.end());
    for (std::size_t k = 0; k < a.matches.size(); ++k) {
        const bool continues = k > 0 && a.matches[k].first == a.matches[k - 1].first + 1 &&
                               a.matches[k].second == a.matches[k - 1].second + 1;
        if (!continues) ++a.chunks;
    }
    return a;
}

double meteor(std::string_view pred, std::string_view ref, const MeteorParams& params) {
    const auto h = strings::normalize_tokens(pred);
    const auto r = strings::normalize_tokens(ref);
    if (h.empty() || r.empty()) return 0.0;
    const auto a = meteor_align(h, r);
    const double m = double(a.matches.size());
    if (m == 0.0) return 0.0;
    const double p = m / double(h.size());
    const double rc = m / double(r.size());
    const double fmean = p * rc / (params.alpha * p + (1.0 - params.alpha) * rc);
    const double penalty = params.gamma * std::pow(double(a.chunks) / m, params.beta);
    return fmean * (1.0 - penalty);
}

}  // namespace pillars::metrics
