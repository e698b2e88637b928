#pragma once

#include <optional>
#include <vector>

#include "pillars/core/types.hpp"
#include "pillars/geo/gazetteer.hpp"

namespace pillars::metrics {

/// Delta with great-circle distance in thousands of kilometers. Operands
/// without coordinates are dropped; absent when no gold item has them.
std::optional<double> co_delta(const std::vector<LocationValue>& preds, const std::vector<LocationValue>& gts);

/// Delta with gazetteer tree distance. Operands that do not resolve are
/// dropped; absent when no gold item resolves.
std::optional<double> hl_delta(const std::vector<LocationValue>& preds, const std::vector<LocationValue>& gts,
                               const geo::Gazetteer& gazetteer);

/// gazetteer_id when set and known, otherwise name resolution of the text.
const geo::GazetteerNode* resolve_value(const LocationValue& v, const geo::Gazetteer& gazetteer);

/// Fills missing coordinates and gazetteer ids from the gazetteer.
LocationValue enrich(LocationValue v, const geo::Gazetteer& gazetteer);

}  // namespace pillars::metrics
