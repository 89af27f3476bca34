#pragma once

#include <map>
#include <string>
#include <vector>

#include "gridsynth/demand.hpp"
#include "gridsynth/wind.hpp"

namespace gridsynth {

// Historical minutely load for one measured system: CSV with header
// `date,minute_of_hour,load_mw`, one block of rows per date, all for the
// same hour of day. Rejects NaN and negative loads.
struct MinutelyHistory {
    // day -> ordered minute values for that day's hour
    std::map<std::string, std::vector<double>> days;
};

MinutelyHistory read_minutely_history(const std::string& path);

// Prototype profile: header `sector,lat,lon`, one metadata row, then one
// hourly MW value per line.
PrototypeProfile read_prototype_profile(const std::string& path);
void write_prototype_profile(const PrototypeProfile& profile, const std::string& path);

// 5-minute wind speeds: CSV `farm_id,timestamp_utc,speed_mps`.
std::map<int, WindSpeedSeries5Min> read_wind_5min(const std::string& path);

// Secondly historical wind: CSV `timestamp_utc,speed_mps`.
std::vector<double> read_wind_secondly(const std::string& path);

// Per-bus minutely load series: CSV `minute_index,load_mw`.
void write_minutely_load(const std::vector<double>& minute_mw, const std::string& path);
std::vector<double> read_minutely_load(const std::string& path);

// Per-farm wind output: CSV `step_index,speed_mps,power_mw`.
void write_farm_series(const std::vector<double>& speeds, const std::vector<double>& power,
                       const std::string& path);
std::vector<double> read_farm_power(const std::string& path);

// FNV-1a content hash of a file, hex-encoded; used in run manifests.
std::string hash_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gridsynth
