#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gridsynth/grid_case.hpp"
#include "gridsynth/io.hpp"
#include "gridsynth/pipeline.hpp"
#include "gridsynth/rng.hpp"

namespace gridsynth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

GridCase build_fixture_case(Rng& rng) {
    GridCase c;
    c.base_mva = 100.0;

    // 8 zones on a 2x4 footprint, 5 buses each.
    const double zone_lat[2] = {30.0, 33.0};
    const double zone_lon[4] = {-102.0, -100.0, -98.0, -96.0};
    const double bus_dlat[5] = {0.0, 0.25, -0.25, 0.15, -0.15};
    const double bus_dlon[5] = {0.0, 0.2, 0.2, -0.3, -0.25};
    for (int z = 1; z <= 8; ++z) {
        Zone zone;
        zone.id = z;
        c.zones.push_back(zone);
        const double lat = zone_lat[(z - 1) / 4];
        const double lon = zone_lon[(z - 1) % 4];
        for (int i = 0; i < 5; ++i) {
            Bus b;
            b.id = z * 100 + i + 1;
            b.zone_id = z;
            b.location = {lat + bus_dlat[i], lon + bus_dlon[i]};
            b.peak_load_mw = 30.0 + 50.0 * rng.next_double();
            const double res = 0.3 + 0.4 * rng.next_double();
            const double com = (1.0 - res) * (0.4 + 0.3 * rng.next_double());
            b.rci_ratio = {res, com, 1.0 - res - com};
            c.buses.push_back(b);
        }
    }

    // One generator per zone at the hub bus; zone 1's is the slack.
    for (int z = 1; z <= 8; ++z) {
        Generator g;
        g.id = z;
        g.bus_id = z * 100 + 1;
        g.location = c.bus(g.bus_id).location;
        g.pmin_mw = 0.0;
        g.pmax_mw = 600.0;
        g.v_setpoint_pu = 1.0;
        g.is_slack = (z == 1);
        c.generators.push_back(g);
    }

    // Intra-zone stars plus an inter-hub ring.
    for (int z = 1; z <= 8; ++z) {
        for (int i = 1; i < 5; ++i) {
            c.lines.push_back({z * 100 + 1, z * 100 + i + 1, 0.01, 0.05, 0.01});
        }
    }
    for (int z = 1; z <= 8; ++z) {
        const int next = z == 8 ? 1 : z + 1;
        c.lines.push_back({z * 100 + 1, next * 100 + 1, 0.005, 0.025, 0.02});
    }
    c.lines.push_back({101, 501, 0.005, 0.03, 0.02});
    c.lines.push_back({301, 701, 0.005, 0.03, 0.02});

    // Six wind farms. Farms 1 and 2 sit 50 km apart, farm 3 is 700 km east
    // of farm 1 along its parallel.
    const double km_per_deg_lat = kEarthRadiusKm * M_PI / 180.0;
    const double km_per_deg_lon = km_per_deg_lat * std::cos(30.0 * M_PI / 180.0);
    c.wind_farms.push_back({1, 201, {30.0, -100.0}, 120.0, "default"});
    c.wind_farms.push_back({2, 202, {30.0 + 50.0 / km_per_deg_lat, -100.0}, 100.0, "default"});
    c.wind_farms.push_back({3, 301, {30.0, -100.0 + 700.0 / km_per_deg_lon}, 150.0, "default"});
    // Farm 1 holds the bounding-box corner (min latitude and longitude), so
    // it coincides with a reference-lattice point; keep the others northeast.
    c.wind_farms.push_back({4, 601, {33.0, -99.5}, 80.0, "default"});
    c.wind_farms.push_back({5, 701, {33.0, -98.2}, 110.0, "default"});
    c.wind_farms.push_back({6, 401, {30.0, -96.1}, 90.0, "default"});

    TurbineCurve t;
    t.id = "default";
    c.turbine_curves[t.id] = t;

    c.correlation_curve = default_correlation_curve();
    return c;
}

void write_load_history(const std::string& path, Rng& rng) {
    // 40 days of one hour in 61-minute resolution (shared endpoint with the
    // next hour), four archetype shapes for the clusterer to recover.
    std::ostringstream out;
    out << "date,minute_of_hour,load_mw\n";
    char buf[64];
    for (int d = 0; d < 40; ++d) {
        const int arch = d % 4;
        const int month = d < 16 ? 6 : 7;
        const int day = d < 16 ? 15 + d : d - 15;
        for (int m = 0; m < 61; ++m) {
            const double x = static_cast<double>(m) / 60.0;
            double shape = 1.0;
            switch (arch) {
                case 0: shape = 1.0 + 0.06 * std::sin(2.0 * M_PI * x); break;
                case 1: shape = 1.0 - 0.05 * std::sin(2.0 * M_PI * x); break;
                case 2: shape = 1.0 + 0.08 * std::sin(M_PI * x); break;
                case 3: shape = 1.0 - 0.04 * std::sin(M_PI * x) + 0.03 * std::sin(4.0 * M_PI * x); break;
            }
            const double noise = 1.0 + 0.004 * rng.next_gaussian();
            const double value = 100.0 * shape * std::max(0.5, noise);
            std::snprintf(buf, sizeof(buf), "2016-%02d-%02d,%d,%.6f\n", month, day, m + 1, value);
            out << buf;
        }
    }
    write_text_file(path, out.str());
}

void write_prototypes(const std::string& dir, Rng& rng) {
    fs::create_directories(dir);
    const int hours = 48;
    struct Spec {
        Sector sector;
        GeoPoint loc;
        double scale;
    };
    const Spec specs[] = {
        {Sector::Residential, {30.2, -100.5}, 2.0}, {Sector::Residential, {32.8, -97.0}, 2.5},
        {Sector::Commercial, {30.8, -99.0}, 3.0},   {Sector::Commercial, {33.1, -101.0}, 2.2},
        {Sector::Industrial, {29.9, -97.5}, 4.0},   {Sector::Industrial, {33.3, -96.5}, 3.5},
    };
    int idx = 0;
    for (const auto& spec : specs) {
        PrototypeProfile p;
        p.sector = spec.sector;
        p.location = spec.loc;
        p.hourly_mw.resize(hours);
        for (int h = 0; h < hours; ++h) {
            const int hod = h % 24;
            double shape;
            switch (spec.sector) {
                case Sector::Residential:
                    shape = 0.5 + 0.5 * std::exp(-std::pow((hod - 19.0) / 4.0, 2.0)) +
                            0.2 * std::exp(-std::pow((hod - 7.0) / 2.0, 2.0));
                    break;
                case Sector::Commercial:
                    shape = 0.3 + 0.7 * std::exp(-std::pow((hod - 13.0) / 4.5, 2.0));
                    break;
                default:
                    shape = 0.85 + 0.1 * std::sin(2.0 * M_PI * hod / 24.0);
                    break;
            }
            p.hourly_mw[h] = spec.scale * shape * (1.0 + 0.01 * rng.next_double());
        }
        write_prototype_profile(p, fs::path(dir) / ("prototype" + std::to_string(idx++) + ".csv"));
    }
}

void write_wind_inputs(const std::string& dir, const GridCase& c, Rng& rng) {
    {
        // 14 five-minute points (65 minutes) per farm.
        std::ostringstream out;
        out << "farm_id,timestamp_utc,speed_mps\n";
        char buf[96];
        for (const auto& farm : c.wind_farms) {
            double v = 8.0 + 1.5 * rng.next_double();
            for (int t = 0; t < 14; ++t) {
                v += 0.4 * rng.next_gaussian();
                v = std::min(13.0, std::max(5.0, v));
                std::snprintf(buf, sizeof(buf), "%d,%d,%.6f\n", farm.id, t * 300, v);
                out << buf;
            }
        }
        write_text_file(fs::path(dir) / "wind_5min.csv", out.str());
    }
    {
        // One hour of secondly speeds, AR(1)-style walk.
        std::ostringstream out;
        out << "timestamp_utc,speed_mps\n";
        char buf[64];
        double v = 9.0;
        for (int t = 0; t < 3600; ++t) {
            v += 0.05 * rng.next_gaussian() + 0.002 * (9.0 - v);
            v = std::max(0.0, v);
            std::snprintf(buf, sizeof(buf), "%d,%.6f\n", t, v);
            out << buf;
        }
        write_text_file(fs::path(dir) / "wind_secondly.csv", out.str());
    }
}

}  // namespace

void make_fixtures(const std::string& dir, std::uint64_t seed) {
    fs::create_directories(dir);
    Rng rng(Rng::mix(seed, 0x66697874ULL));  // "fixt"

    const GridCase grid_case = build_fixture_case(rng);
    save_grid_case(grid_case, fs::path(dir) / "case.json");
    write_load_history(fs::path(dir) / "load_history.csv", rng);
    write_prototypes(fs::path(dir) / "prototypes", rng);
    write_wind_inputs(dir, grid_case, rng);

    json config;
    config["paths"] = {{"case", (fs::path(dir) / "case.json").string()},
                       {"load_history", (fs::path(dir) / "load_history.csv").string()},
                       {"wind_5min", (fs::path(dir) / "wind_5min.csv").string()},
                       {"wind_secondly", (fs::path(dir) / "wind_secondly.csv").string()},
                       {"prototypes_dir", (fs::path(dir) / "prototypes").string()},
                       {"output_dir", (fs::path(dir) / "out").string()}};
    config["seed"] = 42;
    config["demand"] = {{"k", 4}, {"start_hour", 14}, {"hours", 1}};
    config["wind"] = {{"substeps", 21}};
    config["emit"] = {{"step_seconds", 15},
                      {"horizon_steps", 41},
                      {"start_utc", "2016-07-15T14:00:00Z"}};
    write_text_file(fs::path(dir) / "config.json", config.dump(2) + "\n");
}

}  // namespace gridsynth
