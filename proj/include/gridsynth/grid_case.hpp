#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gridsynth/correlation.hpp"
#include "gridsynth/geo.hpp"

namespace gridsynth {

struct Bus {
    int id = 0;
    GeoPoint location;
    int zone_id = 0;
    double peak_load_mw = 0.0;
    // Residential / commercial / industrial energy fractions, sum 1.
    std::array<double, 3> rci_ratio = {0.0, 0.0, 0.0};
};

struct Zone {
    int id = 0;
    GeoPoint centroid;  // mean of member bus coordinates, filled at load
    std::vector<int> member_bus_ids;
};

struct Generator {
    int id = 0;
    int bus_id = 0;
    GeoPoint location;
    double pmin_mw = 0.0;
    double pmax_mw = 0.0;
    double v_setpoint_pu = 1.0;
    bool is_slack = false;
};

struct WindFarm {
    int id = 0;
    int bus_id = 0;
    GeoPoint location;
    double rated_mw = 0.0;
    std::string turbine_curve_id;
};

struct Line {
    int from_bus = 0;
    int to_bus = 0;
    double r_pu = 0.0;
    double x_pu = 0.0;
    double b_pu = 0.0;  // total line charging susceptance
};

// Wind turbine power curve parameters; alpha_1 and alpha_2 are derived from
// the five speeds, beta and alpha_3.
struct TurbineCurve {
    std::string id;
    double v_cutin = 3.0;
    double v_mid = 8.0;
    double v_rated = 12.0;
    double v_lim = 20.0;
    double v_furl = 25.0;
    double beta = 0.95;
    double alpha3 = 2.0;

    double alpha1() const;
    double alpha2() const;
};

struct GridCase {
    std::vector<Zone> zones;
    std::vector<Bus> buses;
    std::vector<Generator> generators;
    std::vector<WindFarm> wind_farms;
    std::vector<Line> lines;
    std::map<std::string, TurbineCurve> turbine_curves;
    CorrelationCurve correlation_curve;
    double base_mva = 100.0;

    const Bus& bus(int id) const;
    const Zone& zone(int id) const;
    const TurbineCurve& turbine_curve(const std::string& id) const;
};

// Loads, cross-links and validates a case file (format_version 1 JSON).
// Throws ParseError on malformed input, ValidationError naming the offending
// entity otherwise.
GridCase load_grid_case(const std::string& path);
GridCase parse_grid_case(const std::string& text);

// Deterministic serialization; save(load(save(x))) is byte-identical to save(x).
std::string serialize_grid_case(const GridCase& c);
void save_grid_case(const GridCase& c, const std::string& path);

void validate_grid_case(const GridCase& c);

}  // namespace gridsynth
