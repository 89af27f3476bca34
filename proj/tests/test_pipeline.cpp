#include <filesystem>
#include <fstream>
#include <map>

#include <doctest.h>

#include "gridsynth/errors.hpp"
#include "gridsynth/io.hpp"
#include "gridsynth/pipeline.hpp"
#include "gridsynth/tsb.hpp"

using namespace gridsynth;
namespace fs = std::filesystem;

namespace {

struct Fixture {
    std::string dir;
    PipelineConfig config;
};

const Fixture& fixture() {
    static Fixture f = [] {
        Fixture out;
        out.dir = (fs::temp_directory_path() / "gridsynth_pipeline_test").string();
        fs::remove_all(out.dir);
        make_fixtures(out.dir, 7);
        out.config = load_config(fs::path(out.dir) / "config.json");
        return out;
    }();
    return f;
}

std::string slurp(const fs::path& p) { return read_text_file(p.string()); }

}  // namespace

TEST_CASE("timestamp and calendar helpers") {
    CHECK(parse_utc_timestamp("2016-07-15T14:00:00Z") == 1468591200000000ULL);
    CHECK(parse_utc_timestamp("1970-01-01T00:00:01Z") == 1000000ULL);
    CHECK_THROWS_AS(parse_utc_timestamp("yesterday"), ParseError);
    CHECK(day_of_year("2016-07-15") == 197);  // leap year
    CHECK(day_of_year("2015-03-01") == 60);
    CHECK(day_of_year("2016-01-01") == 1);
}

TEST_CASE("fixture config loads with expected knobs") {
    const auto& c = fixture().config;
    CHECK(c.seed_set);
    CHECK(c.seed == 42);
    CHECK(c.cluster_count == 4);
    CHECK(c.step_seconds == 15);
    CHECK(c.horizon_steps == 41);
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("config validation rejects missing seed and missing inputs") {
    auto c = fixture().config;
    c.seed_set = false;
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("seed"), ConfigError);
    c = fixture().config;
    c.case_path = "/nonexistent/case.json";
    CHECK_THROWS_WITH_AS(validate_config(c), doctest::Contains("case"), ConfigError);
}

TEST_CASE("demand stage writes one minutely series per bus") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_demand").string();
    cmd_demand(c);
    const GridCase grid_case = load_grid_case(c.case_path);
    for (const auto& bus : grid_case.buses) {
        const auto series = read_minutely_load(
            fs::path(c.output_dir) / ("load_bus" + std::to_string(bus.id) + ".csv"));
        CHECK(series.size() == 61);  // one hour plus shared endpoint
        for (double v : series) CHECK(v >= 0.0);
    }
    CHECK(fs::exists(fs::path(c.output_dir) / "pattern_library.json"));
    CHECK(fs::exists(fs::path(c.output_dir) / "demand_manifest.json"));
}

TEST_CASE("demand stage is deterministic for a fixed seed") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_det_a").string();
    cmd_demand(c);
    auto c2 = c;
    c2.output_dir = (fs::path(fixture().dir) / "out_det_b").string();
    cmd_demand(c2);
    for (const auto& entry : fs::directory_iterator(c.output_dir)) {
        const auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(fs::path(c2.output_dir) / name));
    }
}

TEST_CASE("wind stage: totals equal the per-farm sum") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_wind").string();
    cmd_wind(c);
    const GridCase grid_case = load_grid_case(c.case_path);

    std::vector<std::vector<double>> farm_power;
    for (const auto& farm : grid_case.wind_farms) {
        farm_power.push_back(read_farm_power(
            fs::path(c.output_dir) / ("wind_farm" + std::to_string(farm.id) + ".csv")));
    }
    std::ifstream totals(fs::path(c.output_dir) / "wind_total.csv");
    std::string line;
    std::getline(totals, line);
    CHECK(line == "step_index,total_power_mw");
    std::size_t step = 0;
    while (std::getline(totals, line)) {
        const double total = std::stod(line.substr(line.find(',') + 1));
        double expected = 0.0;
        for (const auto& fp : farm_power) expected += fp[step];
        CHECK(total == doctest::Approx(expected).epsilon(1e-9));
        ++step;
    }
    CHECK(step == farm_power[0].size());
    // 14 five-minute points, 21 sub-steps per interval, shared boundaries.
    CHECK(step == 13 * 20 + 1);
}

TEST_CASE("wind stage with constant fine-grained history reduces to interpolation") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_wind_flat").string();
    // A constant secondly trace makes every variation sigma zero, so each
    // farm's sub-minute speed is exactly the 5-minute linear interpolant.
    const auto flat_path = fs::path(fixture().dir) / "wind_secondly_flat.csv";
    {
        std::ostringstream out;
        out << "timestamp_utc,speed_mps\n";
        for (int s = 0; s < 1200; ++s) out << (1468591200 + s) << ",8.5\n";
        write_text_file(flat_path.string(), out.str());
    }
    c.wind_secondly_path = flat_path.string();
    cmd_wind(c);

    const GridCase grid_case = load_grid_case(c.case_path);
    const auto speeds_5min = read_wind_5min(c.wind_5min_path);
    const auto& farm = grid_case.wind_farms[0];
    const auto& anchors = speeds_5min.at(farm.id).speed_mps;

    std::ifstream in(fs::path(c.output_dir) / ("wind_farm" + std::to_string(farm.id) + ".csv"));
    std::string line;
    std::getline(in, line);  // header
    std::size_t step = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double speed = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const std::size_t interval = step / 20;
        const double frac = (step % 20) / 20.0;
        const double expected = interval + 1 < anchors.size()
                                    ? anchors[interval] +
                                          (anchors[interval + 1] - anchors[interval]) * frac
                                    : anchors.back();
        CHECK(speed == doctest::Approx(expected).epsilon(1e-9));
        ++step;
    }
}

TEST_CASE("compose stage covers every bus and period") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_compose").string();
    cmd_compose(c);
    std::ifstream in(fs::path(c.output_dir) / "composition.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "bus_id,period,motor_a,motor_b,motor_c,motor_d,electronic,static_zip");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 40 * 3);
}

TEST_CASE("emit stage produces a readable measurement stream") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_emit").string();
    c.export_channels = {"bus101.vm", "gen1.p"};
    cmd_demand(c);
    cmd_wind(c);
    cmd_emit(c);
    const TsbFile tsb = read_tsb((fs::path(c.output_dir) / "measurements.tsb").string());
    CHECK(tsb.frames.size() == 41);
    CHECK(tsb.channels.size() == 2 * 40 + 2 * 8 + 2 * 40);
    CHECK(tsb.frames[0].timestamp_utc_us == parse_utc_timestamp(c.start_utc));
    CHECK(fs::exists(fs::path(c.output_dir) / "measurements.csv"));
    CHECK(fs::exists(fs::path(c.output_dir) / "emit_manifest.json"));
}

TEST_CASE("manifests record the seed and input digests") {
    auto c = fixture().config;
    c.output_dir = (fs::path(fixture().dir) / "out_manifest").string();
    cmd_compose(c);
    const std::string manifest = slurp(fs::path(c.output_dir) / "compose_manifest.json");
    CHECK(manifest.find("\"seed\": 42") != std::string::npos);
    CHECK(manifest.find(hash_file(c.case_path)) != std::string::npos);
}
