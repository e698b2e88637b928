#pragma once

#include "pillars/core/types.hpp"

namespace pillars::geo {

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance in kilometers on a sphere of kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

}  // namespace pillars::geo
