#pragma once

#include <json.hpp>

#include "pillars/core/types.hpp"

namespace pillars {

using Json = nlohmann::ordered_json;

Json to_json(const DateValue& d);
Json to_json(const LocationValue& l);
Json to_json(const PillarAnswers& a);
Json to_json(const ImageCase& c);
Json to_json(const EvidenceItem& e);

/// Parsers throw std::invalid_argument with a field path on schema errors.
/// Invariants are not checked here; call validate() on the result.
DateValue date_from_json(const Json& j);
LocationValue location_from_json(const Json& j);
PillarAnswers answers_from_json(const Json& j);
ImageCase case_from_json(const Json& j);
EvidenceItem evidence_from_json(const Json& j);

/// Compact one-line dump with stable key order.
std::string dump_line(const Json& j);

}  // namespace pillars
