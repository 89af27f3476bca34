#pragma once

namespace gridsynth {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180]

    bool operator==(const GeoPoint&) const = default;
};

// Haversine great-circle distance in km on a 6371 km sphere.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b);

bool valid_coordinates(const GeoPoint& p);

}  // namespace gridsynth
