#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gridsynth/geo.hpp"
#include "gridsynth/grid_case.hpp"

namespace gridsynth {

enum class Sector { Residential = 0, Commercial = 1, Industrial = 2 };

Sector sector_from_string(const std::string& s);
std::string to_string(Sector s);

struct PrototypeProfile {
    Sector sector = Sector::Residential;
    GeoPoint location;
    std::vector<double> hourly_mw;
};

struct HourlyBusLoad {
    int bus_id = 0;
    std::vector<double> hourly_mw;
    // Per-hour (res, com, ind) MW split; components sum to hourly_mw.
    std::vector<std::array<double, 3>> sector_split;
};

// One scaled minutely sample, per-unit against the line between its endpoints.
struct ScaledLoadSample {
    int day_index = 0;
    std::vector<double> minute_values;
};

struct LoadPatternLibrary {
    int cluster_count = 0;                        // K
    std::vector<std::vector<double>> patterns;    // K centroids of length M
    std::vector<double> probabilities;            // p_k, sums to 1
    int source_count = 0;                         // D
};

struct ZoneAssignment {
    // assignment[z] = cluster index for the z-th zone (row form of the
    // binary matrix c with row sums 1).
    std::vector<int> assignment;
    std::vector<int> cluster_quota;  // Z_k after rounding repair
    double objective_value = 0.0;    // entropy of the returned assignment
};

struct MinutelyBusLoad {
    int bus_id = 0;
    std::vector<double> minute_mw;
};

struct WeightFitResult {
    std::array<double, 3> weights = {0.0, 0.0, 0.0};
    double peak_residual_mw = 0.0;
    std::array<double, 3> share_residual = {0.0, 0.0, 0.0};
    bool within_tolerance = true;
};

// Weights for the three nearest prototype profiles so the weighted sum peaks
// at the bus peak and the sector energy shares match the bus RCI ratio.
// candidates[i] must belong to sector i.
WeightFitResult fit_bus_weights(const Bus& bus,
                                const std::array<PrototypeProfile, 3>& candidates,
                                double peak_tolerance_mw = 1e-6,
                                double share_tolerance = 1e-6);

// Divides a minutely series by the line through its endpoints; outputs are 1
// exactly at both ends. Throws on a nonpositive interpolant.
ScaledLoadSample scale_day_hour(const std::vector<double>& raw_mw, int day_index = 0);

// K-means (Lloyd, k-means++ seeding) over scaled samples. Deterministic for a
// fixed seed and independent of thread count.
LoadPatternLibrary extract_patterns(const std::vector<ScaledLoadSample>& samples, int k,
                                    std::uint64_t seed, int max_iterations = 300,
                                    double rel_tolerance = 1e-8);

// Euclidean distance between centroids; a same-cluster pair returns epsilon.
double cluster_distance(const LoadPatternLibrary& lib, int k1, int k2, double epsilon = 1e-6);

// Largest-remainder repair of Z_k = round(Z * p_k) so the quotas sum to Z.
std::vector<int> cluster_quotas(const std::vector<double>& probabilities, int zone_count);

// Entropy objective for a candidate assignment (log base 10).
double assignment_entropy(const std::vector<Zone>& zones, const LoadPatternLibrary& lib,
                          const std::vector<int>& assignment, double epsilon = 1e-6);

// Solves the pattern-to-zone assignment: exhaustive enumeration when the
// number of feasible assignments is at most enumeration_limit, simulated
// annealing otherwise. Never returns an assignment worse than the greedy
// nearest-pattern baseline.
ZoneAssignment assign_patterns(const std::vector<Zone>& zones, const LoadPatternLibrary& lib,
                               std::uint64_t seed, std::uint64_t enumeration_limit = 1000000);

// Eq-style re-scaling: minutely value = linear interpolant between the two
// hourly endpoints times the pattern value.
std::vector<double> rescale_hour(double load_h, double load_h1,
                                 const std::vector<double>& pattern);

// Full-horizon rescale for one bus; hours are stitched so consecutive hours
// share the endpoint minute.
MinutelyBusLoad rescale_to_minutes(const HourlyBusLoad& hourly, int pattern_index,
                                   const LoadPatternLibrary& lib, int start_hour, int hours);

}  // namespace gridsynth
