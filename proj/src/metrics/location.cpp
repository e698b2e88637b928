#include "pillars/metrics/location.hpp"

#include <charconv>

#include "pillars/geo/haversine.hpp"
#include "pillars/metrics/delta.hpp"

namespace pillars::metrics {

const geo::GazetteerNode* resolve_value(const LocationValue& v, const geo::Gazetteer& gazetteer) {
    if (v.gazetteer_id) {
        std::int64_t id = 0;
        const auto& s = *v.gazetteer_id;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
        if (ec == std::errc() && ptr == s.data() + s.size())
            if (auto n = gazetteer.find(id)) return n;
    }
    return gazetteer.resolve_location(v.text);
}

LocationValue enrich(LocationValue v, const geo::Gazetteer& gazetteer) {
    if (v.coords && v.gazetteer_id) return v;
    if (auto n = resolve_value(v, gazetteer)) {
        if (!v.coords) v.coords = n->point();
        if (!v.gazetteer_id) v.gazetteer_id = std::to_string(n->id);
    }
    return v;
}

std::optional<double> co_delta(const std::vector<LocationValue>& preds, const std::vector<LocationValue>& gts) {
    std::vector<GeoPoint> p, g;
    for (const auto& v : preds)
        if (v.coords) p.push_back(*v.coords);
    for (const auto& v : gts)
        if (v.coords) g.push_back(*v.coords);
    if (g.empty()) return std::nullopt;
    return delta_score(p, g, [](const GeoPoint& a, const GeoPoint& b) { return geo::haversine_km(a, b) / 1000.0; });
}

std::optional<double> hl_delta(const std::vector<LocationValue>& preds, const std::vector<LocationValue>& gts,
                               const geo::Gazetteer& gazetteer) {
    std::vector<const geo::GazetteerNode*> p, g;
    for (const auto& v : preds)
        if (auto n = resolve_value(v, gazetteer)) p.push_back(n);
    for (const auto& v : gts)
        if (auto n = resolve_value(v, gazetteer)) g.push_back(n);
    if (g.empty()) return std::nullopt;
    return delta_score(p, g, [&](const geo::GazetteerNode* a, const geo::GazetteerNode* b) {
        return gazetteer.hierarchy_distance(*a, *b);
    });
}

}  // namespace pillars::metrics
