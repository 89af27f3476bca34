#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "gridsynth/errors.hpp"
#include "gridsynth/grid_case.hpp"
#include "gridsynth/io.hpp"
#include "gridsynth/pipeline.hpp"

using namespace gridsynth;
namespace fs = std::filesystem;

namespace {

std::string fixture_dir() {
    static std::string dir = [] {
        const std::string d = (fs::temp_directory_path() / "gridsynth_case_test").string();
        make_fixtures(d, 7);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("bundled mini-case loads with expected sizes") {
    const GridCase c = load_grid_case(fs::path(fixture_dir()) / "case.json");
    CHECK(c.zones.size() == 8);
    CHECK(c.buses.size() == 40);
    CHECK(c.wind_farms.size() == 6);
    for (const auto& z : c.zones) CHECK_FALSE(z.member_bus_ids.empty());
}

TEST_CASE("save/load round-trips bit-identically") {
    const GridCase c = load_grid_case(fs::path(fixture_dir()) / "case.json");
    const std::string once = serialize_grid_case(c);
    const GridCase reparsed = parse_grid_case(once);
    CHECK(serialize_grid_case(reparsed) == once);
}

TEST_CASE("rci ratio not summing to 1 names the bus") {
    std::string text = read_text_file(fs::path(fixture_dir()) / "case.json");
    GridCase c = parse_grid_case(text);
    c.buses[3].rci_ratio = {0.5, 0.3, 0.1};  // sums to 0.9
    try {
        validate_grid_case(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(std::to_string(c.buses[3].id)) != std::string::npos);
    }
}

TEST_CASE("dangling zone reference names the bus") {
    GridCase c = load_grid_case(fs::path(fixture_dir()) / "case.json");
    c.buses[0].zone_id = 999;
    CHECK_THROWS_AS(validate_grid_case(c), ValidationError);
}

TEST_CASE("empty file is a parse error") {
    const auto path = fs::temp_directory_path() / "gridsynth_empty_case.json";
    std::ofstream(path).close();
    CHECK_THROWS_AS(load_grid_case(path.string()), ParseError);
}

TEST_CASE("malformed json is a parse error") {
    const auto path = fs::temp_directory_path() / "gridsynth_bad_case.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_grid_case(path.string()), ParseError);
}

TEST_CASE("turbine curve ordering enforced") {
    GridCase c = load_grid_case(fs::path(fixture_dir()) / "case.json");
    c.turbine_curves["default"].v_mid = 2.0;  // below cut-in
    CHECK_THROWS_AS(validate_grid_case(c), ValidationError);
}
