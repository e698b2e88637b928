#include "pillars/core/date_text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "pillars/core/strings.hpp"

namespace pillars {

namespace {

enum class Kind { word, number, punct };

struct Token {
    Kind kind;
    std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isalnum(c)) {
            std::size_t j = i;
            bool all_digits = true;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) {
                if (!std::isdigit(static_cast<unsigned char>(s[j]))) all_digits = false;
                ++j;
            }
            out.push_back({all_digits ? Kind::number : Kind::word, std::string(s.substr(i, j - i))});
            i = j;
        } else {
            out.push_back({Kind::punct, std::string(1, s[i])});
            ++i;
        }
    }
    return out;
}

std::optional<int> month_from_word(std::string_view w) {
    static constexpr std::string_view kFull[] = {"january", "february", "march",     "april",   "may",      "june",
                                                 "july",    "august",   "september", "october", "november", "december"};
    auto lw = strings::lower(w);
    for (int m = 0; m < 12; ++m) {
        if (lw == kFull[m]) return m + 1;
        if (lw.size() == 3 && kFull[m].substr(0, 3) == lw) return m + 1;
    }
    if (lw == "sept") return 9;
    return std::nullopt;
}

std::optional<int> as_year(const Token& t) {
    if (t.kind != Kind::number || t.text.size() != 4) return std::nullopt;
    int y = std::stoi(t.text);
    if (y < DateValue::kMinYear || y > DateValue::kMaxYear) return std::nullopt;
    return y;
}

std::optional<int> as_small(const Token& t, int max) {
    if (t.kind != Kind::number || t.text.empty() || t.text.size() > 2) return std::nullopt;
    int v = std::stoi(t.text);
    if (v < 1 || v > max) return std::nullopt;
    return v;
}

/// "17", "17th", "1st", "2nd", "3rd"
std::optional<int> as_day(const Token& t) {
    if (t.kind == Kind::number) return as_small(t, 31);
    if (t.kind != Kind::word || t.text.size() < 3 || t.text.size() > 4) return std::nullopt;
    auto digits = t.text.substr(0, t.text.size() - 2);
    auto suffix = strings::lower(std::string_view(t.text).substr(t.text.size() - 2));
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return std::nullopt;
    if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") return std::nullopt;
    return as_small({Kind::number, digits}, 31);
}

class Matcher {
public:
    explicit Matcher(const std::vector<Token>& tokens) : t_(tokens) {}

    /// Attempts every pattern at position i; on success returns the value and
    /// sets `next` past the consumed tokens.
    std::optional<DateValue> match(std::size_t i, std::size_t& next) const {
        if (auto d = iso(i, next)) return d;
        if (auto d = month_first(i, next)) return d;
        if (auto d = day_first(i, next)) return d;
        if (auto y = at(i) ? as_year(*at(i)) : std::nullopt) {
            next = i + 1;
            return DateValue::y(*y);
        }
        return std::nullopt;
    }

private:
    const Token* at(std::size_t i) const { return i < t_.size() ? &t_[i] : nullptr; }
    bool punct(std::size_t i, char c) const { return at(i) && at(i)->kind == Kind::punct && at(i)->text[0] == c; }
    bool word(std::size_t i, std::string_view w) const {
        return at(i) && at(i)->kind == Kind::word && strings::iequals(at(i)->text, w);
    }
    std::optional<int> month_at(std::size_t i, std::size_t& next) const {
        if (!at(i) || at(i)->kind != Kind::word) return std::nullopt;
        auto m = month_from_word(at(i)->text);
        if (!m) return std::nullopt;
        next = i + 1;
        if (punct(next, '.')) ++next;
        return m;
    }

    static DateValue with_day(int y, int m, int d) {
        DateValue v = DateValue::ymd(y, m, d);
        if (!v.valid()) v.day.reset();
        return v;
    }

    std::optional<DateValue> iso(std::size_t i, std::size_t& next) const {
        auto y = at(i) ? as_year(*at(i)) : std::nullopt;
        if (!y) return std::nullopt;
        for (char sep : {'-', '/'}) {
            if (!punct(i + 1, sep) || !at(i + 2)) continue;
            if (at(i + 2)->text.size() != 2) continue;
            auto m = as_small(*at(i + 2), 12);
            if (!m) continue;
            if (punct(i + 3, sep) && at(i + 4)) {
                // "18" or the "18T14" token of an ISO datetime
                const auto& dt = at(i + 4)->text;
                const bool has_time = dt.size() > 2 && (dt[2] == 'T' || dt[2] == 't') && std::isdigit(static_cast<unsigned char>(dt[0])) &&
                                      std::isdigit(static_cast<unsigned char>(dt[1]));
                auto d = dt.size() == 2 || has_time ? as_small({Kind::number, dt.substr(0, 2)}, 31) : std::nullopt;
                if (d) {
                    next = i + 5;
                    return with_day(*y, *m, *d);
                }
            }
            next = i + 3;
            return DateValue::ym(*y, *m);
        }
        return std::nullopt;
    }

    // Month D[,] YYYY | Month[,] YYYY
    std::optional<DateValue> month_first(std::size_t i, std::size_t& next) const {
        std::size_t j = 0;
        auto m = month_at(i, j);
        if (!m) return std::nullopt;
        if (at(j)) {
            if (auto d = as_day(*at(j))) {
                std::size_t k = j + 1;
                if (punct(k, ',')) ++k;
                if (auto y = at(k) ? as_year(*at(k)) : std::nullopt) {
                    next = k + 1;
                    return with_day(*y, *m, *d);
                }
            }
        }
        std::size_t k = j;
        if (punct(k, ',')) ++k;
        if (word(k, "of")) ++k;
        if (auto y = at(k) ? as_year(*at(k)) : std::nullopt) {
            next = k + 1;
            return DateValue::ym(*y, *m);
        }
        return std::nullopt;
    }

    // D [of] Month[,] YYYY
    std::optional<DateValue> day_first(std::size_t i, std::size_t& next) const {
        auto d = at(i) ? as_day(*at(i)) : std::nullopt;
        if (!d) return std::nullopt;
        std::size_t j = i + 1;
        if (word(j, "of")) ++j;
        std::size_t k = 0;
        auto m = month_at(j, k);
        if (!m) return std::nullopt;
        if (punct(k, ',')) ++k;
        auto y = at(k) ? as_year(*at(k)) : std::nullopt;
        if (!y) return std::nullopt;
        next = k + 1;
        return with_day(*y, *m, *d);
    }

    const std::vector<Token>& t_;
};

}  // namespace

std::vector<DateValue> normalize_date_text(std::string_view text) {
    auto tokens = tokenize(text);
    Matcher matcher(tokens);
    std::vector<DateValue> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t next = i + 1;
        if (auto d = matcher.match(i, next)) {
            if (d->valid() && std::find(out.begin(), out.end(), *d) == out.end()) out.push_back(*d);
            i = next;
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace pillars
