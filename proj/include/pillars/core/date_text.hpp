#pragma once

#include <string_view>
#include <vector>

#include "pillars/core/date.hpp"

namespace pillars {

/// Extracts every recognizable date from free text, in order of first
/// appearance and without duplicates. Recognized forms: "August 17, 2013",
/// "17 August 2013", "17th of Aug. 2013", "August 2013", "2013",
/// "2013-08-17", "2013/08/17", "2013-08". A range such as "between 2020 and
/// 2022" yields both endpoints. All results satisfy DateValue invariants.
std::vector<DateValue> normalize_date_text(std::string_view text);

}  // namespace pillars
