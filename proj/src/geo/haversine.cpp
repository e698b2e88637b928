#include "pillars/geo/haversine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pillars::geo {

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    constexpr double kRad = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * kRad;
    const double dlon = (b.lon - a.lon) * kRad;
    const double s1 = std::sin(dlat / 2);
    const double s2 = std::sin(dlon / 2);
    double h = s1 * s1 + std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * s2 * s2;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace pillars::geo
