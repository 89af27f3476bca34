#include "gridsynth/geo.hpp"

#include <cmath>

namespace gridsynth {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

bool valid_coordinates(const GeoPoint& p) {
    return p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0 &&
           p.longitude_deg >= -180.0 && p.longitude_deg <= 180.0 &&
           std::isfinite(p.latitude_deg) && std::isfinite(p.longitude_deg);
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b) {
    if (a == b) return 0.0;
    const double phi1 = a.latitude_deg * kDegToRad;
    const double phi2 = b.latitude_deg * kDegToRad;
    const double dphi = (b.latitude_deg - a.latitude_deg) * kDegToRad;
    const double dlam = (b.longitude_deg - a.longitude_deg) * kDegToRad;

    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    h = std::min(1.0, std::max(0.0, h));
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace gridsynth
