#include <doctest.h>

#include "gridsynth/composition.hpp"
#include "gridsynth/errors.hpp"
#include "gridsynth/rng.hpp"

using namespace gridsynth;

namespace {

Bus bus_with(std::array<double, 3> rci) {
    Bus b;
    b.id = 42;
    b.rci_ratio = rci;
    return b;
}

}  // namespace

TEST_CASE("pure residential at peak reproduces the table row") {
    const auto table = default_composition_table();
    const auto comp = compose(bus_with({1, 0, 0}), Period::Peak, table);
    const ComponentRow expected = {0.08, 0.07, 0.02, 0.34, 0.15, 0.34};
    for (int i = 0; i < 6; ++i) CHECK(comp.fractions[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("industrial rows identical across periods") {
    const auto table = default_composition_table();
    const ComponentRow expected = {0.13, 0.22, 0.16, 0.0, 0.27, 0.22};
    for (Period p : {Period::Peak, Period::Shoulder, Period::Light}) {
        const auto comp = compose(bus_with({0, 0, 1}), p, table);
        for (int i = 0; i < 6; ++i) CHECK(comp.fractions[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("mixed res/com at light is the row mean") {
    const auto table = default_composition_table();
    const auto comp = compose(bus_with({0.5, 0.5, 0}), Period::Light, table);
    CHECK(comp.fractions[0] == doctest::Approx(0.11).epsilon(1e-12));  // (10+12)/2 %
    CHECK(comp.fractions[3] == doctest::Approx(0.025).epsilon(1e-12));  // (0+5)/2 %
}

TEST_CASE("fractions sum to exactly 1 on random simplex points") {
    const auto table = default_composition_table();
    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        double r = rng.next_double(), c = rng.next_double(), i = rng.next_double();
        const double total = r + c + i;
        const auto comp = compose(bus_with({r / total, c / total, i / total}),
                                  static_cast<Period>(trial % 3), table);
        double sum = 0.0;
        for (double f : comp.fractions) {
            CHECK(f >= 0.0);
            sum += f;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("compose is linear in the rci ratio") {
    const auto table = default_composition_table();
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 3> r1{}, r2{};
        double t1 = 0, t2 = 0;
        for (int s = 0; s < 3; ++s) {
            r1[s] = rng.next_double();
            r2[s] = rng.next_double();
            t1 += r1[s];
            t2 += r2[s];
        }
        for (int s = 0; s < 3; ++s) {
            r1[s] /= t1;
            r2[s] /= t2;
        }
        const double alpha = rng.next_double();
        std::array<double, 3> mix{};
        for (int s = 0; s < 3; ++s) mix[s] = alpha * r1[s] + (1 - alpha) * r2[s];
        const auto a = compose(bus_with(r1), Period::Shoulder, table);
        const auto b = compose(bus_with(r2), Period::Shoulder, table);
        const auto m = compose(bus_with(mix), Period::Shoulder, table);
        for (int i = 0; i < 6; ++i) {
            CHECK(m.fractions[i] ==
                  doctest::Approx(alpha * a.fractions[i] + (1 - alpha) * b.fractions[i])
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("table validation") {
    auto table = default_composition_table();
    CHECK_NOTHROW(validate_composition_table(table));
    table.rows[{Period::Peak, LoadClass::Res}][0] = 50.0;  // row no longer sums to 100
    CHECK_THROWS_AS(validate_composition_table(table), ConfigError);
    table.rows.erase({Period::Peak, LoadClass::Res});
    CHECK_THROWS_AS(validate_composition_table(table), ConfigError);
}

TEST_CASE("period classification defaults") {
    const auto w = default_period_windows();
    CHECK(classify_period(15, w) == Period::Peak);
    CHECK(classify_period(3, w) == Period::Light);
    CHECK(classify_period(7, w) == Period::Shoulder);   // boundary: later window owns it
    CHECK(classify_period(22, w) == Period::Light);
    CHECK(classify_period(14, w) == Period::Peak);
    CHECK(classify_period(19, w) == Period::Shoulder);
    CHECK_THROWS_AS(classify_period(24, w), ValidationError);
}

TEST_CASE("overlapping or uncovering windows rejected") {
    PeriodWindows overlapping;
    overlapping.windows = {{0, 13, Period::Light}, {12, 24, Period::Peak}};
    CHECK_THROWS_AS(classify_period(5, overlapping), ConfigError);
    PeriodWindows gap;
    gap.windows = {{0, 10, Period::Light}, {11, 24, Period::Peak}};
    CHECK_THROWS_AS(classify_period(5, gap), ConfigError);
}
