#pragma once

#include <stdexcept>
#include <vector>

#include "pillars/assignment/lap.hpp"
#include "pillars/core/date.hpp"

namespace pillars::metrics {

/// Mean of 1/(1+d) over a minimum-total-distance matching between
/// predictions and gold items, divided by the number of gold items.
/// Unmatched gold items contribute 0; extra predictions are ignored. When
/// several matchings reach the minimum distance, the one with the highest
/// score is used, which keeps the result independent of input order.
template <class P, class G, class Dist>
double delta_score(const std::vector<P>& preds, const std::vector<G>& gts, Dist&& dist) {
    if (gts.empty()) throw std::invalid_argument("delta_score: gold list is empty");
    if (preds.empty()) return 0.0;
    assignment::CostMatrix m(preds.size(), gts.size());
    assignment::CostMatrix loss(preds.size(), gts.size());
    for (std::size_t i = 0; i < preds.size(); ++i)
        for (std::size_t j = 0; j < gts.size(); ++j) {
            const double d = static_cast<double>(dist(preds[i], gts[j]));
            m.set(i, j, d);
            loss.set(i, j, d / (1.0 + d));
        }
    const auto match = assignment::solve_lap_lexicographic(m, loss);
    double sum = 0.0;
    for (auto [i, j] : match.pairs) sum += 1.0 / (1.0 + m(i, j));
    return sum / static_cast<double>(gts.size());
}

/// Distance in years. Compared at the finest granularity either operand
/// carries; a coarser operand is imputed with month 7 and day 15.
double date_distance(const DateValue& a, const DateValue& b);

enum class DateGranularity { day, month, year };

/// Every component down to `g` must be present in both and equal.
bool date_em(const DateValue& pred, const DateValue& gt, DateGranularity g);

/// Case-level exact match: some matching covers every gold date with an
/// exact match at granularity `g`.
bool date_list_em(const std::vector<DateValue>& preds, const std::vector<DateValue>& gts, DateGranularity g);

}  // namespace pillars::metrics
