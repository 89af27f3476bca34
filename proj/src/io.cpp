#include "gridsynth/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gridsynth/errors.hpp"

namespace gridsynth {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_load(const std::string& s, const std::string& context) {
    double v;
    try {
        v = std::stod(s);
    } catch (const std::exception&) {
        throw ParseError(context + ": not a number: '" + s + "'");
    }
    if (std::isnan(v)) throw ParseError(context + ": NaN value rejected");
    if (v < 0.0) throw ParseError(context + ": negative value rejected: " + s);
    return v;
}

std::string chomp(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot write " + path);
    out << content;
}

MinutelyHistory read_minutely_history(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("minutely history: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "date,minute_of_hour,load_mw") {
        throw ParseError("minutely history " + path + ": bad header");
    }
    MinutelyHistory history;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw ParseError("minutely history " + path + ": row " + std::to_string(row) +
                             " has " + std::to_string(fields.size()) + " fields");
        }
        history.days[fields[0]].push_back(
            parse_load(fields[2], path + " row " + std::to_string(row)));
    }
    if (history.days.empty()) throw ParseError("minutely history " + path + ": no data rows");
    const std::size_t m = history.days.begin()->second.size();
    for (const auto& [day, values] : history.days) {
        if (values.size() != m) {
            throw ParseError("minutely history " + path + ": day " + day + " has " +
                             std::to_string(values.size()) + " minutes, expected " +
                             std::to_string(m));
        }
    }
    return history;
}

PrototypeProfile read_prototype_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("prototype profile: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "sector,lat,lon") {
        throw ParseError("prototype profile " + path + ": bad header");
    }
    if (!std::getline(in, line)) throw ParseError("prototype profile " + path + ": missing metadata row");
    const auto meta = split_csv_line(chomp(line));
    if (meta.size() != 3) throw ParseError("prototype profile " + path + ": bad metadata row");
    PrototypeProfile profile;
    profile.sector = sector_from_string(meta[0]);
    try {
        profile.location = {std::stod(meta[1]), std::stod(meta[2])};
    } catch (const std::exception&) {
        throw ParseError("prototype profile " + path + ": bad coordinates");
    }
    std::size_t row = 2;
    while (std::getline(in, line)) {
        ++row;
        line = chomp(line);
        if (line.empty()) continue;
        profile.hourly_mw.push_back(parse_load(line, path + " row " + std::to_string(row)));
    }
    if (profile.hourly_mw.empty()) throw ParseError("prototype profile " + path + ": no values");
    return profile;
}

void write_prototype_profile(const PrototypeProfile& profile, const std::string& path) {
    std::ostringstream out;
    out << "sector,lat,lon\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g\n", to_string(profile.sector).c_str(),
                  profile.location.latitude_deg, profile.location.longitude_deg);
    out << buf;
    for (double v : profile.hourly_mw) {
        std::snprintf(buf, sizeof(buf), "%.9g\n", v);
        out << buf;
    }
    write_text_file(path, out.str());
}

std::map<int, WindSpeedSeries5Min> read_wind_5min(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("5-min wind: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "farm_id,timestamp_utc,speed_mps") {
        throw ParseError("5-min wind " + path + ": bad header");
    }
    std::map<int, WindSpeedSeries5Min> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw ParseError("5-min wind " + path + ": bad row " + std::to_string(row));
        const int farm_id = std::stoi(fields[0]);
        auto& series = out[farm_id];
        series.farm_id = farm_id;
        series.speed_mps.push_back(parse_load(fields[2], path + " row " + std::to_string(row)));
    }
    if (out.empty()) throw ParseError("5-min wind " + path + ": no data rows");
    return out;
}

std::vector<double> read_wind_secondly(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("secondly wind: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "timestamp_utc,speed_mps") {
        throw ParseError("secondly wind " + path + ": bad header");
    }
    std::vector<double> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw ParseError("secondly wind " + path + ": bad row " + std::to_string(row));
        out.push_back(parse_load(fields[1], path + " row " + std::to_string(row)));
    }
    if (out.empty()) throw ParseError("secondly wind " + path + ": no data rows");
    return out;
}

void write_minutely_load(const std::vector<double>& minute_mw, const std::string& path) {
    std::ostringstream out;
    out << "minute_index,load_mw\n";
    char buf[64];
    for (std::size_t i = 0; i < minute_mw.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", i, minute_mw[i]);
        out << buf;
    }
    write_text_file(path, out.str());
}

std::vector<double> read_minutely_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("minutely load: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "minute_index,load_mw") {
        throw ParseError("minutely load " + path + ": bad header");
    }
    std::vector<double> out;
    while (std::getline(in, line)) {
        line = chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw ParseError("minutely load " + path + ": bad row");
        out.push_back(parse_load(fields[1], path));
    }
    return out;
}

void write_farm_series(const std::vector<double>& speeds, const std::vector<double>& power,
                       const std::string& path) {
    std::ostringstream out;
    out << "step_index,speed_mps,power_mw\n";
    char buf[96];
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g\n", i, speeds[i], power[i]);
        out << buf;
    }
    write_text_file(path, out.str());
}

std::vector<double> read_farm_power(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("farm series: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "step_index,speed_mps,power_mw") {
        throw ParseError("farm series " + path + ": bad header");
    }
    std::vector<double> out;
    while (std::getline(in, line)) {
        line = chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw ParseError("farm series " + path + ": bad row");
        out.push_back(std::stod(fields[2]));
    }
    return out;
}

std::string hash_file(const std::string& path) {
    const std::string data = read_text_file(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace gridsynth
