#include "pillars/core/date.hpp"

#include <chrono>

#include <fmt/format.h>

namespace pillars {

namespace {

constexpr const char* kMonthNames[] = {"January", "February", "March",     "April",   "May",      "June",
                                       "July",    "August",   "September", "October", "November", "December"};

}  // namespace

const char* month_name(int month) {
    if (month < 1 || month > 12) return "";
    return kMonthNames[month - 1];
}

int days_in_month(int year, int month) {
    using namespace std::chrono;
    auto last = year_month_day_last{std::chrono::year{year} / std::chrono::month{unsigned(month)} / std::chrono::last};
    return static_cast<int>(unsigned(last.day()));
}

std::optional<std::string> DateValue::validate() const {
    if (year < kMinYear || year > kMaxYear) return fmt::format("year {} outside [{}, {}]", year, kMinYear, kMaxYear);
    if (day && !month) return std::string("day given without month");
    if (month && (*month < 1 || *month > 12)) return fmt::format("month {} outside [1, 12]", *month);
    if (day) {
        int n = days_in_month(year, *month);
        if (*day < 1 || *day > n) return fmt::format("day {} invalid for {}-{:02}", *day, year, *month);
    }
    return std::nullopt;
}

DateValue DateValue::first_day() const { return {year, month.value_or(1), day.value_or(1)}; }

DateValue DateValue::last_day() const {
    int m = month.value_or(12);
    return {year, m, day.value_or(days_in_month(year, m))};
}

std::string DateValue::iso() const {
    if (day) return fmt::format("{:04}-{:02}-{:02}", year, *month, *day);
    if (month) return fmt::format("{:04}-{:02}", year, *month);
    return fmt::format("{:04}", year);
}

std::string DateValue::human() const {
    if (day) return fmt::format("{} {}, {}", month_name(*month), *day, year);
    if (month) return fmt::format("{} {}", month_name(*month), year);
    return fmt::format("{}", year);
}

std::strong_ordering lexical_order(const DateValue& a, const DateValue& b) {
    if (auto c = a.year <=> b.year; c != 0) return c;
    if (auto c = a.month.value_or(0) <=> b.month.value_or(0); c != 0) return c;
    return a.day.value_or(0) <=> b.day.value_or(0);
}

long days_since_epoch(const DateValue& full) {
    using namespace std::chrono;
    sys_days d = std::chrono::year{full.year} / std::chrono::month{unsigned(full.month.value_or(1))} /
                 std::chrono::day{unsigned(full.day.value_or(1))};
    return d.time_since_epoch().count();
}

}  // namespace pillars
