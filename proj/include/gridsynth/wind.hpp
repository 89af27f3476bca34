#pragma once

#include <cstdint>
#include <vector>

#include "gridsynth/correlation.hpp"
#include "gridsynth/geo.hpp"
#include "gridsynth/grid_case.hpp"

namespace gridsynth {

struct WindSpeedSeries5Min {
    int farm_id = 0;
    std::vector<double> speed_mps;  // one value per 5-minute boundary
};

struct SigmaDistribution {
    std::vector<double> samples;  // one sigma per rolling window, m/s
};

struct ReferenceLattice {
    std::vector<GeoPoint> points;
    // weights[e][n] = rho(distance(farm e, point n)); omega[e] = row sum.
    std::vector<std::vector<double>> weights;
    std::vector<double> omega;
};

struct DetrendResult {
    std::vector<double> detrended;     // W-hat: series minus endpoint line
    std::vector<double> differenced;   // W-hat-hat: first differences, [0] = 0
    double mean = 0.0;                 // mean of the differenced set
    double sigma = 0.0;                // its standard deviation (population)
};

// Removes the endpoint line and takes first differences.
DetrendResult detrend_and_difference(const std::vector<double>& window);

// One sigma per rolling window of window_length samples (stride 1).
SigmaDistribution estimate_sigma_distribution(const std::vector<double>& secondly_speeds,
                                              int window_length);

// 600-km lattice covering the farm bounding box with one cell of margin;
// correlation-curve weights per farm.
ReferenceLattice build_reference_lattice(const GridCase& grid_case, const CorrelationCurve& curve,
                                         double spacing_km = 600.0);

// Per reference point: sigma drawn uniformly from the distribution samples,
// Gaussian step set, cumulative sum. values[n][s], s in [0, steps); first
// entry of every series is 0. Deterministic for a fixed seed.
std::vector<std::vector<double>> synthesize_reference_variations(const ReferenceLattice& lattice,
                                                                 const SigmaDistribution& psi,
                                                                 int steps, std::uint64_t seed);

// Weighted average of the reference series per farm.
std::vector<std::vector<double>> farm_variations(
    const ReferenceLattice& lattice, const std::vector<std::vector<double>>& reference);

// Interpolates between the two 5-minute endpoints, adds the variation,
// pins both endpoints exactly and clamps negatives to zero.
std::vector<double> combine_speed(double v_start, double v_end,
                                  const std::vector<double>& variation);

// Per-unit turbine output at wind speed v (sigmoid body, drop-off past
// v_lim, zero past v_furl), clamped to [0, 1].
double power_output(const TurbineCurve& curve, double v_mps);

// rated_mw times the per-unit curve, per step.
std::vector<double> farm_power_series(const WindFarm& farm, const std::vector<double>& speeds,
                                      const TurbineCurve& curve);

}  // namespace gridsynth
