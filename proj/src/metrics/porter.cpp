#include <functional>
#include <string>
#include <string_view>

#include "pillars/core/strings.hpp"
#include "pillars/metrics/text.hpp"

namespace pillars::metrics {

namespace {

bool is_consonant(const std::string& w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 || !is_consonant(w, i - 1);
        default:
            return true;
    }
}

int measure(const std::string& stem) {
    int m = 0;
    for (std::size_t i = 1; i < stem.size(); ++i)
        if (!is_consonant(stem, i - 1) && is_consonant(stem, i)) ++m;
    return m;
}

bool contains_vowel(const std::string& stem) {
    for (std::size_t i = 0; i < stem.size(); ++i)
        if (!is_consonant(stem, i)) return true;
    return false;
}

bool ends_double_consonant(const std::string& w) {
    const auto n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

bool ends_cvc(const std::string& w) {
    const auto n = w.size();
    return n >= 3 && is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
           w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y';
}

bool ends_with(const std::string& w, std::string_view s) { return std::string_view(w).ends_with(s); }

using Cond = std::function<bool(const std::string&)>;

struct Rule {
    std::string_view suffix;  // "*d" means a double consonant ending
    std::string replacement;
    Cond cond;
};

// The first rule whose suffix matches decides, even when its condition fails.
std::string apply_rules(const std::string& w, const std::vector<Rule>& rules) {
    for (const auto& r : rules) {
        std::string stem;
        if (r.suffix == "*d") {
            if (!ends_double_consonant(w)) continue;
            stem = w.substr(0, w.size() - 2);
        } else if (ends_with(w, r.suffix)) {
            stem = w.substr(0, w.size() - r.suffix.size());
        } else {
            continue;
        }
        if (!r.cond || r.cond(stem)) return stem + r.replacement;
        return w;
    }
    return w;
}

const Cond kPositive = [](const std::string& s) { return measure(s) > 0; };
const Cond kAboveOne = [](const std::string& s) { return measure(s) > 1; };

std::string step1a(const std::string& w) {
    return apply_rules(w, {{"sses", "ss", {}}, {"ies", "i", {}}, {"ss", "ss", {}}, {"s", "", {}}});
}

std::string step1b(const std::string& w) {
    if (ends_with(w, "eed")) {
        auto stem = w.substr(0, w.size() - 3);
        return measure(stem) > 0 ? stem + "ee" : w;
    }
    std::string mid;
    bool ok = false;
    for (std::string_view suf : {"ed", "ing"}) {
        if (ends_with(w, suf)) {
            mid = w.substr(0, w.size() - suf.size());
            if (contains_vowel(mid)) {
                ok = true;
                break;
            }
        }
    }
    if (!ok) return w;
    const char last = mid.empty() ? '\0' : mid.back();
    return apply_rules(mid, {
        {"at", "ate", {}},
        {"bl", "ble", {}},
        {"iz", "ize", {}},
        {"*d", std::string(1, last), [last](const std::string&) { return last != 'l' && last != 's' && last != 'z'; }},
        {"", "e", [](const std::string& s) { return measure(s) == 1 && ends_cvc(s); }},
    });
}

std::string step1c(const std::string& w) { return apply_rules(w, {{"y", "i", contains_vowel}}); }

std::string step2(const std::string& w) {
    return apply_rules(w, {
        {"ational", "ate", kPositive}, {"tional", "tion", kPositive}, {"enci", "ence", kPositive},
        {"anci", "ance", kPositive},   {"izer", "ize", kPositive},    {"abli", "able", kPositive},
        {"alli", "al", kPositive},     {"entli", "ent", kPositive},   {"eli", "e", kPositive},
        {"ousli", "ous", kPositive},   {"ization", "ize", kPositive}, {"ation", "ate", kPositive},
        {"ator", "ate", kPositive},    {"alism", "al", kPositive},    {"iveness", "ive", kPositive},
        {"fulness", "ful", kPositive}, {"ousness", "ous", kPositive}, {"aliti", "al", kPositive},
        {"iviti", "ive", kPositive},   {"biliti", "ble", kPositive},
    });
}

std::string step3(const std::string& w) {
    return apply_rules(w, {
        {"icate", "ic", kPositive}, {"ative", "", kPositive}, {"alize", "al", kPositive}, {"iciti", "ic", kPositive},
        {"ical", "ic", kPositive},  {"ful", "", kPositive},   {"ness", "", kPositive},
    });
}

std::string step4(const std::string& w) {
    const Cond ion = [](const std::string& s) { return measure(s) > 1 && (s.back() == 's' || s.back() == 't'); };
    return apply_rules(w, {
        {"al", "", kAboveOne},   {"ance", "", kAboveOne}, {"ence", "", kAboveOne},  {"er", "", kAboveOne},
        {"ic", "", kAboveOne},   {"able", "", kAboveOne}, {"ible", "", kAboveOne},  {"ant", "", kAboveOne},
        {"ement", "", kAboveOne}, {"ment", "", kAboveOne}, {"ent", "", kAboveOne},  {"ion", "", ion},
        {"ou", "", kAboveOne},   {"ism", "", kAboveOne},  {"ate", "", kAboveOne},   {"iti", "", kAboveOne},
        {"ous", "", kAboveOne},  {"ive", "", kAboveOne},  {"ize", "", kAboveOne},
    });
}

std::string step5a(const std::string& w) {
    if (!ends_with(w, "e")) return w;
    auto stem = w.substr(0, w.size() - 1);
    const int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) return stem;
    return w;
}

std::string step5b(const std::string& w) {
    if (ends_with(w, "ll") && measure(w.substr(0, w.size() - 1)) > 1) return w.substr(0, w.size() - 1);
    return w;
}

}  // namespace

std::string porter_stem(std::string_view word) {
    auto w = strings::lower(word);
    if (w.empty()) return w;
    w = step1a(w);
    w = step1b(w);
    w = step1c(w);
    w = step2(w);
    w = step3(w);
    w = step4(w);
    w = step5a(w);
    w = step5b(w);
    return w;
}

}  // namespace pillars::metrics
