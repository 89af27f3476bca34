#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gridsynth {

// Channel unit codes for the tsb container.
enum class ChannelUnit : std::uint8_t {
    PerUnit = 0,
    Radians = 1,
    Megawatts = 2,
    Megavars = 3,
    MetersPerSecond = 4,
};

struct Channel {
    std::string name;
    ChannelUnit unit = ChannelUnit::PerUnit;
};

struct TsbFrame {
    std::uint64_t timestamp_utc_us = 0;
    std::vector<double> values;  // one per channel
};

// Time-series binary container:
//   magic "GSTB", u16 version=1, u32 channel count,
//   per channel: u16 name length, UTF-8 name, u8 unit code,
//   u64 frame count, frames of (u64 UTC microseconds, channel_count f64).
// All integers little-endian.
struct TsbFile {
    std::vector<Channel> channels;
    std::vector<TsbFrame> frames;
};

void write_tsb(const TsbFile& file, const std::string& path);
TsbFile read_tsb(const std::string& path);

// One row per timestamp, one column per selected channel, 9 significant
// digits, RFC-4180 quoting where needed.
void export_csv(const TsbFile& file, const std::vector<std::string>& selection,
                const std::string& path);

}  // namespace gridsynth
