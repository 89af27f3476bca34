#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gridsynth {

struct PipelineConfig {
    // Paths
    std::string case_path;
    std::string load_history_path;
    std::string wind_5min_path;
    std::string wind_secondly_path;
    std::string prototypes_dir;
    std::string output_dir;

    // Master seed; mandatory, no wall-clock default.
    std::uint64_t seed = 0;
    bool seed_set = false;

    // Demand knobs
    int cluster_count = 4;
    int start_hour = 14;          // hour of day the simulation window begins
    int demand_hours = 1;         // hourly span converted to minutes
    int season_start_doy = 152;   // day-of-year window for sample collection
    int season_end_doy = 244;
    double forecast_noise_sigma = 0.0;
    std::uint64_t enumeration_limit = 1000000;

    // Wind knobs
    int wind_substeps = 21;       // steps per 5-minute window, endpoints inclusive
    int sigma_window_s = 300;
    double lattice_spacing_km = 600.0;

    // Emission knobs
    int step_seconds = 15;
    int horizon_steps = 41;
    double noise_sigma = 0.01;
    double power_factor = 0.95;
    double loss_fraction = 0.0;
    int redispatch_interval_s = 900;
    std::string start_utc = "2016-07-15T14:00:00Z";
    std::vector<std::string> export_channels;  // optional CSV export
};

PipelineConfig load_config(const std::string& path);
void validate_config(const PipelineConfig& config);

// "YYYY-MM-DDTHH:MM:SSZ" -> UTC microseconds since the epoch.
std::uint64_t parse_utc_timestamp(const std::string& text);

// Day of year (1..366) from "YYYY-MM-DD".
int day_of_year(const std::string& date);

// Pipeline stages. Each writes its outputs plus a JSON manifest under
// config.output_dir and is a pure function of (config, inputs, seed).
void cmd_demand(const PipelineConfig& config);
void cmd_wind(const PipelineConfig& config);
void cmd_compose(const PipelineConfig& config);
void cmd_emit(const PipelineConfig& config);
void cmd_all(const PipelineConfig& config);

// Generates the bundled synthetic stand-ins for the external datasets: a
// 40-bus / 8-zone / 6-farm case, minutely load history, prototype profiles,
// 5-minute and secondly wind data.
void make_fixtures(const std::string& dir, std::uint64_t seed = 7);

}  // namespace gridsynth
