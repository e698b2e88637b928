#include "pillars/metrics/delta.hpp"

#include <cmath>
#include <cstdlib>

namespace pillars::metrics {

namespace {

DateValue impute(const DateValue& d, DateGranularity target) {
    DateValue out = d;
    if (target != DateGranularity::year && !out.month) {
        out.month = 7;
        out.day.reset();
    }
    if (target == DateGranularity::day && !out.day) out.day = std::min(15, days_in_month(out.year, *out.month));
    return out;
}

DateGranularity finest(const DateValue& d) {
    if (d.day) return DateGranularity::day;
    if (d.month) return DateGranularity::month;
    return DateGranularity::year;
}

}  // namespace

double date_distance(const DateValue& a, const DateValue& b) {
    const auto g = std::min(finest(a), finest(b));
    const auto x = impute(a, g);
    const auto y = impute(b, g);
    switch (g) {
        case DateGranularity::day:
            return std::abs(double(days_since_epoch(x) - days_since_epoch(y))) / 365.25;
        case DateGranularity::month:
            return std::abs(double((x.year * 12 + *x.month) - (y.year * 12 + *y.month))) / 12.0;
        case DateGranularity::year:
            break;
    }
    return std::abs(double(x.year - y.year));
}

bool date_em(const DateValue& pred, const DateValue& gt, DateGranularity g) {
    if (pred.year != gt.year) return false;
    if (g == DateGranularity::year) return true;
    if (!pred.month || !gt.month || *pred.month != *gt.month) return false;
    if (g == DateGranularity::month) return true;
    return pred.day && gt.day && *pred.day == *gt.day;
}

bool date_list_em(const std::vector<DateValue>& preds, const std::vector<DateValue>& gts, DateGranularity g) {
    if (gts.empty() || preds.size() < gts.size()) return false;
    assignment::CostMatrix m(preds.size(), gts.size());
    for (std::size_t i = 0; i < preds.size(); ++i)
        for (std::size_t j = 0; j < gts.size(); ++j) m.set(i, j, date_em(preds[i], gts[j], g) ? 0.0 : 1.0);
    return assignment::solve_lap(m).total_cost == 0.0;
}

}  // namespace pillars::metrics
