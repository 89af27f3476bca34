#include "gridsynth/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gridsynth/errors.hpp"

namespace gridsynth {

namespace {

double eval_poly(const std::vector<double>& coeffs, double d) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * d + *it;
    return acc;
}

const CorrelationCurve::Segment* find_segment(const CorrelationCurve& curve, double d) {
    for (const auto& seg : curve.segments) {
        if (d >= seg.d_lo_km && d <= seg.d_hi_km) return &seg;
    }
    return nullptr;
}

}  // namespace

CorrelationCurve default_correlation_curve() {
    // (1 - d/600)^2 = 1 - d/300 + d^2/360000, split at 300 km.
    const std::vector<double> c = {1.0, -1.0 / 300.0, 1.0 / 360000.0};
    CorrelationCurve curve;
    curve.max_distance_km = 600.0;
    curve.segments = {{0.0, 300.0, c}, {300.0, 600.0, c}};
    return curve;
}

double correlation(const CorrelationCurve& curve, double distance_km) {
    if (distance_km < 0.0) {
        throw ValidationError("correlation: negative distance " + std::to_string(distance_km));
    }
    if (distance_km >= curve.max_distance_km) return 0.0;
    const auto* seg = find_segment(curve, distance_km);
    if (seg == nullptr) return 0.0;
    return std::clamp(eval_poly(seg->coeffs, distance_km), 0.0, 1.0);
}

void validate_correlation_curve(const CorrelationCurve& curve) {
    if (curve.segments.empty() || curve.max_distance_km <= 0.0) {
        throw ValidationError("correlation curve: empty or nonpositive cutoff");
    }
    if (std::abs(correlation(curve, 0.0) - 1.0) > 1e-9) {
        throw ValidationError("correlation curve: rho(0) != 1");
    }
    // Continuity at interior joins.
    for (std::size_t i = 0; i + 1 < curve.segments.size(); ++i) {
        const double join = curve.segments[i].d_hi_km;
        const double left = eval_poly(curve.segments[i].coeffs, join);
        const double right = eval_poly(curve.segments[i + 1].coeffs, join);
        if (std::abs(left - right) > 1e-6) {
            throw ValidationError("correlation curve: discontinuity at " + std::to_string(join) + " km");
        }
    }
    // Monotone non-increasing on a dense grid.
    double prev = correlation(curve, 0.0);
    const int steps = 6000;
    for (int i = 1; i <= steps; ++i) {
        const double d = curve.max_distance_km * i / steps;
        const double r = correlation(curve, d);
        if (r > prev + 1e-9) {
            throw ValidationError("correlation curve: not monotone at " + std::to_string(d) + " km");
        }
        prev = r;
    }
}

}  // namespace gridsynth
