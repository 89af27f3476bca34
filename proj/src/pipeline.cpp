#include "gridsynth/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gridsynth/composition.hpp"
#include "gridsynth/demand.hpp"
#include "gridsynth/emit.hpp"
#include "gridsynth/errors.hpp"
#include "gridsynth/io.hpp"
#include "gridsynth/rng.hpp"
#include "gridsynth/wind.hpp"

namespace gridsynth {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    PipelineConfig c;
    try {
        const auto& paths = j.at("paths");
        c.case_path = paths.at("case").get<std::string>();
        c.load_history_path = paths.at("load_history").get<std::string>();
        c.wind_5min_path = paths.at("wind_5min").get<std::string>();
        c.wind_secondly_path = paths.at("wind_secondly").get<std::string>();
        c.prototypes_dir = paths.at("prototypes_dir").get<std::string>();
        c.output_dir = paths.at("output_dir").get<std::string>();
        if (j.contains("seed")) {
            c.seed = j.at("seed").get<std::uint64_t>();
            c.seed_set = true;
        }
        if (j.contains("demand")) {
            const auto& d = j.at("demand");
            c.cluster_count = d.value("k", c.cluster_count);
            c.start_hour = d.value("start_hour", c.start_hour);
            c.demand_hours = d.value("hours", c.demand_hours);
            c.season_start_doy = d.value("season_start_doy", c.season_start_doy);
            c.season_end_doy = d.value("season_end_doy", c.season_end_doy);
            c.forecast_noise_sigma = d.value("forecast_noise_sigma", c.forecast_noise_sigma);
            c.enumeration_limit = d.value("enumeration_limit", c.enumeration_limit);
        }
        if (j.contains("wind")) {
            const auto& w = j.at("wind");
            c.wind_substeps = w.value("substeps", c.wind_substeps);
            c.sigma_window_s = w.value("sigma_window_s", c.sigma_window_s);
            c.lattice_spacing_km = w.value("lattice_spacing_km", c.lattice_spacing_km);
        }
        if (j.contains("emit")) {
            const auto& e = j.at("emit");
            c.step_seconds = e.value("step_seconds", c.step_seconds);
            c.horizon_steps = e.value("horizon_steps", c.horizon_steps);
            c.noise_sigma = e.value("noise_sigma", c.noise_sigma);
            c.power_factor = e.value("power_factor", c.power_factor);
            c.loss_fraction = e.value("loss_fraction", c.loss_fraction);
            c.redispatch_interval_s = e.value("redispatch_interval_s", c.redispatch_interval_s);
            c.start_utc = e.value("start_utc", c.start_utc);
            if (e.contains("export_channels")) {
                c.export_channels = e.at("export_channels").get<std::vector<std::string>>();
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return c;
}

void validate_config(const PipelineConfig& config) {
    if (!config.seed_set) {
        throw ConfigError("config: seed is mandatory (no wall-clock default)");
    }
    for (const auto& [label, path] :
         {std::pair<std::string, std::string>{"case", config.case_path},
          {"load_history", config.load_history_path},
          {"wind_5min", config.wind_5min_path},
          {"wind_secondly", config.wind_secondly_path},
          {"prototypes_dir", config.prototypes_dir}}) {
        if (!fs::exists(path)) {
            throw ConfigError("config: " + label + " path does not exist: " + path);
        }
    }
}

std::uint64_t parse_utc_timestamp(const std::string& text) {
    std::tm tm = {};
    int y, mo, d, h, mi, s;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%dZ", &y, &mo, &d, &h, &mi, &s) != 6) {
        throw ParseError("bad UTC timestamp '" + text + "' (want YYYY-MM-DDTHH:MM:SSZ)");
    }
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    const time_t epoch = timegm(&tm);
    if (epoch < 0) throw ParseError("timestamp before epoch: " + text);
    return static_cast<std::uint64_t>(epoch) * 1000000ULL;
}

int day_of_year(const std::string& date) {
    int y, mo, d;
    if (std::sscanf(date.c_str(), "%d-%d-%d", &y, &mo, &d) != 3) {
        throw ParseError("bad date '" + date + "' (want YYYY-MM-DD)");
    }
    static const int days_before[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    int doy = days_before[mo - 1] + d;
    if (leap && mo > 2) ++doy;
    return doy;
}

namespace {

bool in_season(int doy, int start, int end) {
    if (start <= end) return doy >= start && doy <= end;
    return doy >= start || doy <= end;  // wraps past new year
}

void ensure_output_dir(const PipelineConfig& config) {
    fs::create_directories(config.output_dir);
}

void write_manifest(const PipelineConfig& config, const std::string& name, json extra) {
    extra["seed"] = config.seed;
    extra["inputs"] = {{"case", hash_file(config.case_path)},
                       {"load_history", hash_file(config.load_history_path)},
                       {"wind_5min", hash_file(config.wind_5min_path)},
                       {"wind_secondly", hash_file(config.wind_secondly_path)}};
    write_text_file(fs::path(config.output_dir) / name, extra.dump(2) + "\n");
}

std::vector<PrototypeProfile> load_prototypes(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".csv") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<PrototypeProfile> profiles;
    for (const auto& f : files) profiles.push_back(read_prototype_profile(f));
    if (profiles.empty()) throw ConfigError("no prototype profiles in " + dir);
    return profiles;
}

std::array<PrototypeProfile, 3> nearest_per_sector(const Bus& bus,
                                                   const std::vector<PrototypeProfile>& profiles) {
    std::array<const PrototypeProfile*, 3> best = {nullptr, nullptr, nullptr};
    std::array<double, 3> best_d;
    best_d.fill(std::numeric_limits<double>::max());
    for (const auto& p : profiles) {
        const int s = static_cast<int>(p.sector);
        const double d = great_circle_distance(bus.location, p.location);
        if (d < best_d[s]) {
            best_d[s] = d;
            best[s] = &p;
        }
    }
    for (int s = 0; s < 3; ++s) {
        if (best[s] == nullptr) {
            throw ConfigError("no prototype profile for sector " +
                              to_string(static_cast<Sector>(s)));
        }
    }
    return {*best[0], *best[1], *best[2]};
}

}  // namespace

void cmd_demand(const PipelineConfig& config) {
    validate_config(config);
    ensure_output_dir(config);
    const GridCase grid_case = load_grid_case(config.case_path);
    const auto profiles = load_prototypes(config.prototypes_dir);

    // Hourly bus loads from weighted prototype profiles.
    std::map<int, HourlyBusLoad> hourly;
    for (const auto& bus : grid_case.buses) {
        const auto candidates = nearest_per_sector(bus, profiles);
        const auto fit = fit_bus_weights(bus, candidates);
        HourlyBusLoad load;
        load.bus_id = bus.id;
        const std::size_t horizon = candidates[0].hourly_mw.size();
        load.hourly_mw.resize(horizon);
        load.sector_split.resize(horizon);
        for (std::size_t h = 0; h < horizon; ++h) {
            double total = 0.0;
            for (int s = 0; s < 3; ++s) {
                const double v = fit.weights[s] * candidates[s].hourly_mw[h];
                load.sector_split[h][s] = v;
                total += v;
            }
            load.hourly_mw[h] = total;
        }
        hourly[bus.id] = load;
    }

    // Variation patterns from history within the configured season.
    const MinutelyHistory history = read_minutely_history(config.load_history_path);
    std::vector<ScaledLoadSample> samples;
    int day_index = 0;
    for (const auto& [date, values] : history.days) {
        if (!in_season(day_of_year(date), config.season_start_doy, config.season_end_doy)) continue;
        samples.push_back(scale_day_hour(values, day_index++));
    }
    if (samples.empty()) {
        throw ValidationError("cmd_demand: no history days fall inside the season window");
    }
    const LoadPatternLibrary lib =
        extract_patterns(samples, config.cluster_count, Rng::mix(config.seed, 1));
    const ZoneAssignment assignment =
        assign_patterns(grid_case.zones, lib, Rng::mix(config.seed, 2), config.enumeration_limit);

    std::map<int, int> zone_pattern;
    for (std::size_t z = 0; z < grid_case.zones.size(); ++z) {
        zone_pattern[grid_case.zones[z].id] = assignment.assignment[z];
    }

    for (const auto& bus : grid_case.buses) {
        MinutelyBusLoad minutely = rescale_to_minutes(
            hourly[bus.id], zone_pattern[bus.zone_id], lib, config.start_hour, config.demand_hours);
        if (config.forecast_noise_sigma > 0.0) {
            Rng rng = Rng(config.seed).substream(0x666f7265ULL, bus.id);
            for (double& v : minutely.minute_mw) {
                v = std::max(0.0, v + config.forecast_noise_sigma * rng.next_gaussian());
            }
        }
        write_minutely_load(minutely.minute_mw,
                            fs::path(config.output_dir) / ("load_bus" + std::to_string(bus.id) + ".csv"));
    }

    json patterns_json = json::array();
    for (const auto& p : lib.patterns) patterns_json.push_back(p);
    write_text_file(fs::path(config.output_dir) / "pattern_library.json",
                    json{{"k", lib.cluster_count},
                         {"patterns", patterns_json},
                         {"probabilities", lib.probabilities},
                         {"source_count", lib.source_count}}
                            .dump(2) +
                        "\n");

    write_manifest(config, "demand_manifest.json",
                   json{{"stage", "demand"},
                        {"k", config.cluster_count},
                        {"sample_count", samples.size()},
                        {"assignment", assignment.assignment},
                        {"cluster_quota", assignment.cluster_quota},
                        {"objective_value", assignment.objective_value}});
}

void cmd_wind(const PipelineConfig& config) {
    validate_config(config);
    ensure_output_dir(config);
    const GridCase grid_case = load_grid_case(config.case_path);
    const auto speeds_5min = read_wind_5min(config.wind_5min_path);
    const auto secondly = read_wind_secondly(config.wind_secondly_path);

    const SigmaDistribution psi = estimate_sigma_distribution(secondly, config.sigma_window_s);
    const ReferenceLattice lattice = build_reference_lattice(
        grid_case, grid_case.correlation_curve, config.lattice_spacing_km);

    // Uniform 5-min point count across farms.
    std::size_t point_count = 0;
    for (const auto& farm : grid_case.wind_farms) {
        auto it = speeds_5min.find(farm.id);
        if (it == speeds_5min.end()) {
            throw ValidationError("cmd_wind: no 5-min speeds for farm " + std::to_string(farm.id));
        }
        if (point_count == 0) point_count = it->second.speed_mps.size();
        if (it->second.speed_mps.size() != point_count) {
            throw ValidationError("cmd_wind: farm " + std::to_string(farm.id) +
                                  " has a different 5-min series length");
        }
    }
    if (point_count < 2) throw ValidationError("cmd_wind: need at least two 5-min points");

    const int substeps = config.wind_substeps;
    const std::size_t intervals = point_count - 1;
    const std::size_t total_steps = intervals * (substeps - 1) + 1;

    std::vector<std::vector<double>> farm_speeds(grid_case.wind_farms.size());
    for (auto& v : farm_speeds) v.reserve(total_steps);

    for (std::size_t tau = 0; tau < intervals; ++tau) {
        const auto reference = synthesize_reference_variations(
            lattice, psi, substeps, Rng::mix(Rng::mix(config.seed, 3), tau));
        const auto variations = farm_variations(lattice, reference);
        for (std::size_t e = 0; e < grid_case.wind_farms.size(); ++e) {
            const auto& series_5min = speeds_5min.at(grid_case.wind_farms[e].id).speed_mps;
            const auto combined =
                combine_speed(series_5min[tau], series_5min[tau + 1], variations[e]);
            const std::size_t from = tau == 0 ? 0 : 1;  // shared boundary step
            farm_speeds[e].insert(farm_speeds[e].end(), combined.begin() + from, combined.end());
        }
    }

    std::vector<double> total_power(total_steps, 0.0);
    for (std::size_t e = 0; e < grid_case.wind_farms.size(); ++e) {
        const auto& farm = grid_case.wind_farms[e];
        const auto power =
            farm_power_series(farm, farm_speeds[e], grid_case.turbine_curve(farm.turbine_curve_id));
        for (std::size_t s = 0; s < total_steps; ++s) total_power[s] += power[s];
        write_farm_series(farm_speeds[e], power,
                          fs::path(config.output_dir) / ("wind_farm" + std::to_string(farm.id) + ".csv"));
    }
    {
        std::ostringstream out;
        out << "step_index,total_power_mw\n";
        char buf[64];
        for (std::size_t s = 0; s < total_steps; ++s) {
            std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", s, total_power[s]);
            out << buf;
        }
        write_text_file(fs::path(config.output_dir) / "wind_total.csv", out.str());
    }

    write_manifest(config, "wind_manifest.json",
                   json{{"stage", "wind"},
                        {"substeps", substeps},
                        {"sigma_samples", psi.samples.size()},
                        {"lattice_points", lattice.points.size()},
                        {"total_steps", total_steps}});
}

void cmd_compose(const PipelineConfig& config) {
    validate_config(config);
    ensure_output_dir(config);
    const GridCase grid_case = load_grid_case(config.case_path);
    const CompositionTable table = default_composition_table();
    validate_composition_table(table);

    std::ostringstream out;
    out << "bus_id,period,motor_a,motor_b,motor_c,motor_d,electronic,static_zip\n";
    char buf[160];
    for (const auto& bus : grid_case.buses) {
        for (Period period : {Period::Peak, Period::Shoulder, Period::Light}) {
            const BusComposition comp = compose(bus, period, table);
            std::snprintf(buf, sizeof(buf), "%d,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", bus.id,
                          to_string(period).c_str(), comp.fractions[0], comp.fractions[1],
                          comp.fractions[2], comp.fractions[3], comp.fractions[4],
                          comp.fractions[5]);
            out << buf;
        }
    }
    write_text_file(fs::path(config.output_dir) / "composition.csv", out.str());
    write_manifest(config, "compose_manifest.json", json{{"stage", "compose"}});
}

void cmd_emit(const PipelineConfig& config) {
    validate_config(config);
    ensure_output_dir(config);
    const GridCase grid_case = load_grid_case(config.case_path);

    std::map<int, std::vector<double>> minutely;
    for (const auto& bus : grid_case.buses) {
        minutely[bus.id] = read_minutely_load(
            fs::path(config.output_dir) / ("load_bus" + std::to_string(bus.id) + ".csv"));
    }
    std::map<int, std::vector<double>> wind_power;
    for (const auto& farm : grid_case.wind_farms) {
        wind_power[farm.id] = read_farm_power(
            fs::path(config.output_dir) / ("wind_farm" + std::to_string(farm.id) + ".csv"));
    }

    Timeline timeline;
    timeline.start_utc_us = parse_utc_timestamp(config.start_utc);
    timeline.step_seconds = config.step_seconds;
    timeline.horizon_steps = config.horizon_steps;

    EmitOptions options;
    options.noise_sigma = config.noise_sigma;
    options.power_factor = config.power_factor;
    options.loss_fraction = config.loss_fraction;
    options.redispatch_interval_s = config.redispatch_interval_s;

    const EmitResult result = run_emission(grid_case, minutely, wind_power, timeline, options,
                                           Rng::mix(config.seed, 4));
    write_tsb(result.tsb, fs::path(config.output_dir) / "measurements.tsb");
    if (!config.export_channels.empty()) {
        export_csv(result.tsb, config.export_channels,
                   fs::path(config.output_dir) / "measurements.csv");
    }

    int converged = 0;
    for (const auto& f : result.frames) converged += f.converged ? 1 : 0;
    write_manifest(config, "emit_manifest.json",
                   json{{"stage", "emit"},
                        {"frames", result.frames.size()},
                        {"converged_frames", converged},
                        {"step_seconds", config.step_seconds}});
}

void cmd_all(const PipelineConfig& config) {
    cmd_demand(config);
    cmd_wind(config);
    cmd_compose(config);
    cmd_emit(config);
    write_manifest(config, "all_manifest.json", json{{"stage", "all"}});
}

}  // namespace gridsynth
