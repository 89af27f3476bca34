#include "gridsynth/tsb.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "gridsynth/errors.hpp"

namespace gridsynth {

namespace {

constexpr char kMagic[4] = {'G', 'S', 'T', 'B'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
    }
}

void put_f64(std::string& out, double value) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, sizeof(bits));
    put_le(out, bits);
}

class Reader {
public:
    Reader(const std::string& data) : data_(data) {}

    template <typename T>
    T get_le() {
        require(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }

    double get_f64() {
        const std::uint64_t bits = get_le<std::uint64_t>();
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    std::string get_bytes(std::size_t n) {
        require(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void require(std::size_t n) {
        if (pos_ + n > data_.size()) throw ParseError("tsb: truncated payload");
    }
    const std::string& data_;
    std::size_t pos_ = 0;
};

}  // namespace

void write_tsb(const TsbFile& file, const std::string& path) {
    if (file.frames.empty()) throw ValidationError("write_tsb: no frames");
    for (const auto& frame : file.frames) {
        if (frame.values.size() != file.channels.size()) {
            throw ValidationError("write_tsb: frame channel count mismatch");
        }
    }
    std::string out;
    out.append(kMagic, 4);
    put_le(out, kVersion);
    put_le(out, static_cast<std::uint32_t>(file.channels.size()));
    for (const auto& ch : file.channels) {
        put_le(out, static_cast<std::uint16_t>(ch.name.size()));
        out.append(ch.name);
        put_le(out, static_cast<std::uint8_t>(ch.unit));
    }
    put_le(out, static_cast<std::uint64_t>(file.frames.size()));
    for (const auto& frame : file.frames) {
        put_le(out, frame.timestamp_utc_us);
        for (double v : frame.values) put_f64(out, v);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw RuntimeFailure("write_tsb: cannot open " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

TsbFile read_tsb(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("read_tsb: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string data = ss.str();

    Reader reader(data);
    const std::string magic = reader.get_bytes(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) {
        throw ParseError("tsb: magic mismatch (not a GSTB file)");
    }
    const auto version = reader.get_le<std::uint16_t>();
    if (version != kVersion) {
        throw ParseError("tsb: unknown version " + std::to_string(version));
    }
    TsbFile file;
    const auto channel_count = reader.get_le<std::uint32_t>();
    for (std::uint32_t i = 0; i < channel_count; ++i) {
        Channel ch;
        const auto name_len = reader.get_le<std::uint16_t>();
        ch.name = reader.get_bytes(name_len);
        ch.unit = static_cast<ChannelUnit>(reader.get_le<std::uint8_t>());
        file.channels.push_back(ch);
    }
    const auto frame_count = reader.get_le<std::uint64_t>();
    const std::size_t frame_size = 8 + 8 * channel_count;
    if (reader.remaining() != frame_count * frame_size) {
        throw ParseError("tsb: payload length does not match frame count");
    }
    for (std::uint64_t i = 0; i < frame_count; ++i) {
        TsbFrame frame;
        frame.timestamp_utc_us = reader.get_le<std::uint64_t>();
        frame.values.resize(channel_count);
        for (auto& v : frame.values) v = reader.get_f64();
        file.frames.push_back(std::move(frame));
    }
    return file;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
}

}  // namespace

void export_csv(const TsbFile& file, const std::vector<std::string>& selection,
                const std::string& path) {
    if (selection.empty()) {
        std::string names;
        for (const auto& ch : file.channels) names += " " + ch.name;
        throw ValidationError("export_csv: empty selection; available channels:" + names);
    }
    std::vector<std::size_t> indices;
    for (const auto& name : selection) {
        bool found = false;
        for (std::size_t i = 0; i < file.channels.size(); ++i) {
            if (file.channels[i].name == name) {
                indices.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) {
            std::string names;
            for (const auto& ch : file.channels) names += " " + ch.name;
            throw ValidationError("export_csv: unknown channel '" + name +
                                  "'; available channels:" + names);
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("export_csv: cannot open " + path);
    out << "timestamp_utc_us";
    for (const auto& name : selection) out << ',' << csv_quote(name);
    out << '\n';
    char buf[64];
    for (const auto& frame : file.frames) {
        out << frame.timestamp_utc_us;
        for (std::size_t idx : indices) {
            std::snprintf(buf, sizeof(buf), "%.9g", frame.values[idx]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace gridsynth
