#include "gridsynth/wind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridsynth/errors.hpp"
#include "gridsynth/kernels.hpp"
#include "gridsynth/rng.hpp"

namespace gridsynth {

DetrendResult detrend_and_difference(const std::vector<double>& window) {
    const std::size_t s_count = window.size();
    if (s_count < 2) throw ValidationError("detrend_and_difference: need at least 2 samples");
    DetrendResult r;
    r.detrended.resize(s_count);
    r.differenced.resize(s_count);
    const double slope = (window.back() - window.front()) / static_cast<double>(s_count - 1);
    for (std::size_t s = 0; s < s_count; ++s) {
        r.detrended[s] = window[s] - (window.front() + slope * static_cast<double>(s));
    }
    r.detrended.front() = 0.0;
    r.detrended.back() = 0.0;
    r.differenced[0] = 0.0;
    for (std::size_t s = 1; s < s_count; ++s) {
        r.differenced[s] = r.detrended[s] - r.detrended[s - 1];
    }
    double sum = 0.0;
    for (double d : r.differenced) sum += d;
    r.mean = sum / static_cast<double>(s_count);
    double var = 0.0;
    for (double d : r.differenced) var += (d - r.mean) * (d - r.mean);
    r.sigma = std::sqrt(var / static_cast<double>(s_count));
    return r;
}

SigmaDistribution estimate_sigma_distribution(const std::vector<double>& secondly_speeds,
                                              int window_length) {
    if (window_length < 2) throw ValidationError("estimate_sigma_distribution: window too short");
    if (static_cast<int>(secondly_speeds.size()) < window_length) {
        throw ValidationError("estimate_sigma_distribution: no complete window in input");
    }
    SigmaDistribution dist;
    for (std::size_t start = 0; start + window_length <= secondly_speeds.size(); ++start) {
        std::vector<double> window(secondly_speeds.begin() + start,
                                   secondly_speeds.begin() + start + window_length);
        dist.samples.push_back(detrend_and_difference(window).sigma);
    }
    return dist;
}

ReferenceLattice build_reference_lattice(const GridCase& grid_case, const CorrelationCurve& curve,
                                         double spacing_km) {
    if (grid_case.wind_farms.empty()) {
        throw ValidationError("build_reference_lattice: case has no wind farms");
    }
    double lat_lo = 90.0, lat_hi = -90.0, lon_lo = 180.0, lon_hi = -180.0;
    for (const auto& farm : grid_case.wind_farms) {
        lat_lo = std::min(lat_lo, farm.location.latitude_deg);
        lat_hi = std::max(lat_hi, farm.location.latitude_deg);
        lon_lo = std::min(lon_lo, farm.location.longitude_deg);
        lon_hi = std::max(lon_hi, farm.location.longitude_deg);
    }

    const double km_per_deg_lat = kEarthRadiusKm * M_PI / 180.0;
    const double dlat = spacing_km / km_per_deg_lat;

    ReferenceLattice lattice;
    // Southwest anchor one cell outside the bounding box; rows along
    // meridians, columns spaced by the row's local longitude scale.
    const double lat0 = lat_lo - dlat;
    int rows = static_cast<int>(std::ceil((lat_hi + dlat - lat0) / dlat)) + 1;
    for (int r = 0; r < rows; ++r) {
        const double lat = lat0 + r * dlat;
        const double coslat = std::max(0.05, std::cos(lat * M_PI / 180.0));
        const double dlon = spacing_km / (km_per_deg_lat * coslat);
        const double lon0 = lon_lo - dlon;
        int cols = static_cast<int>(std::ceil((lon_hi + dlon - lon0) / dlon)) + 1;
        for (int c = 0; c < cols; ++c) {
            lattice.points.push_back(GeoPoint{lat, lon0 + c * dlon});
        }
    }

    lattice.weights.resize(grid_case.wind_farms.size());
    lattice.omega.resize(grid_case.wind_farms.size());
    for (std::size_t e = 0; e < grid_case.wind_farms.size(); ++e) {
        auto& row = lattice.weights[e];
        row.resize(lattice.points.size());
        double omega = 0.0;
        for (std::size_t n = 0; n < lattice.points.size(); ++n) {
            const double d = great_circle_distance(grid_case.wind_farms[e].location,
                                                   lattice.points[n]);
            row[n] = correlation(curve, d);
            omega += row[n];
        }
        if (omega <= 0.0) {
            throw ValidationError("build_reference_lattice: farm " +
                                  std::to_string(grid_case.wind_farms[e].id) +
                                  " not covered by any lattice point");
        }
        lattice.omega[e] = omega;
    }
    return lattice;
}

std::vector<std::vector<double>> synthesize_reference_variations(const ReferenceLattice& lattice,
                                                                 const SigmaDistribution& psi,
                                                                 int steps, std::uint64_t seed) {
    if (steps < 2) throw ValidationError("synthesize_reference_variations: steps must be >= 2");
    if (psi.samples.empty()) {
        throw ValidationError("synthesize_reference_variations: empty sigma distribution");
    }
    std::vector<std::vector<double>> out(lattice.points.size());
    for (std::size_t n = 0; n < lattice.points.size(); ++n) {
        Rng rng = Rng(seed).substream(0x726566ULL, n);  // "ref", point index
        const double sigma = psi.samples[rng.next_below(psi.samples.size())];
        auto& series = out[n];
        series.resize(steps);
        series[0] = 0.0;  // both the step set and its cumulative sum start at 0
        double cumulative = 0.0;
        for (int s = 1; s < steps; ++s) {
            cumulative += sigma * rng.next_gaussian();
            series[s] = cumulative;
        }
    }
    return out;
}

std::vector<std::vector<double>> farm_variations(
    const ReferenceLattice& lattice, const std::vector<std::vector<double>>& reference) {
    for (double omega : lattice.omega) {
        if (omega <= 0.0) throw ValidationError("farm_variations: zero total weight");
    }
    std::vector<std::vector<double>> farms;
    kernels::mix_variations_auto(lattice.weights, reference, farms);
    return farms;
}

std::vector<double> combine_speed(double v_start, double v_end,
                                  const std::vector<double>& variation) {
    const std::size_t steps = variation.size();
    if (steps < 2) throw ValidationError("combine_speed: need at least 2 steps");
    std::vector<double> out(steps);
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t s = 0; s < steps; ++s) {
        const double base = v_start + (v_end - v_start) * static_cast<double>(s) / denom;
        out[s] = std::max(0.0, base + variation[s]);
    }
    out.front() = v_start;
    out.back() = v_end;
    return out;
}

double power_output(const TurbineCurve& curve, double v_mps) {
    if (v_mps < 0.0) throw ValidationError("power_output: negative wind speed");
    double p;
    if (v_mps <= curve.v_lim) {
        p = 1.0 - 1.0 / (1.0 + std::exp((v_mps - curve.v_mid) / curve.alpha1()));
    } else if (v_mps <= curve.v_furl) {
        p = 1.0 - curve.alpha2() * std::pow(v_mps - curve.v_lim, curve.alpha3);
    } else {
        p = 0.0;
    }
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> farm_power_series(const WindFarm& farm, const std::vector<double>& speeds,
                                      const TurbineCurve& curve) {
    std::vector<double> out(speeds.size());
    for (std::size_t s = 0; s < speeds.size(); ++s) {
        out[s] = farm.rated_mw * power_output(curve, speeds[s]);
    }
    return out;
}

}  // namespace gridsynth
