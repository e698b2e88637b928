#pragma once

#include <compare>
#include <optional>
#include <string>

namespace pillars {

/// Calendar date with optional month/day. A year-only value means "some
/// time in that year"; month without day means "some time in that month".
struct DateValue {
    int year = 2000;
    std::optional<int> month;
    std::optional<int> day;

    static constexpr int kMinYear = 1000;
    static constexpr int kMaxYear = 2100;

    enum class Granularity { year, month, day };

    Granularity granularity() const {
        if (day) return Granularity::day;
        if (month) return Granularity::month;
        return Granularity::year;
    }
    bool has_day() const { return day.has_value(); }

    /// Empty optional when all invariants hold, otherwise the violation.
    std::optional<std::string> validate() const;
    bool valid() const { return !validate().has_value(); }

    /// Earliest / latest full day covered by this value.
    DateValue first_day() const;
    DateValue last_day() const;

    /// "2013", "2013-08", "2013-08-17"
    std::string iso() const;
    /// "2013", "August 2013", "August 17, 2013"
    std::string human() const;

    static DateValue ymd(int y, int m, int d) { return {y, m, d}; }
    static DateValue ym(int y, int m) { return {y, m, std::nullopt}; }
    static DateValue y(int y) { return {y, std::nullopt, std::nullopt}; }

    friend bool operator==(const DateValue&, const DateValue&) = default;
};

/// Orders by (year, month, day) where an absent component sorts before any
/// present one. Used for deterministic sorting, not for temporal comparison.
std::strong_ordering lexical_order(const DateValue& a, const DateValue& b);

/// Days since 1970-01-01 of a fully specified date.
long days_since_epoch(const DateValue& full);

int days_in_month(int year, int month);

const char* month_name(int month);

}  // namespace pillars
