#pragma once

#include <vector>

namespace gridsynth {

// Piecewise-polynomial correlation-versus-distance curve. Each segment holds
// polynomial coefficients in ascending powers of the distance in km.
struct CorrelationCurve {
    struct Segment {
        double d_lo_km = 0.0;
        double d_hi_km = 0.0;
        std::vector<double> coeffs;
    };

    std::vector<Segment> segments;
    double max_distance_km = 0.0;

    bool operator==(const CorrelationCurve&) const = default;
};

// Default two-segment quadratic with rho(0)=1, rho(600)=0 and zero slope at
// the cutoff: rho(d) = (1 - d/600)^2.
CorrelationCurve default_correlation_curve();

// Evaluates the curve, clamped to [0, 1]; zero at and beyond the cutoff.
// Negative distance is a precondition violation.
double correlation(const CorrelationCurve& curve, double distance_km);

// Checks rho(0)=1, monotone non-increasing, continuity at joins (1e-6).
void validate_correlation_curve(const CorrelationCurve& curve);

}  // namespace gridsynth
