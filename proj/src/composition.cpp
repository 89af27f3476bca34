#include "gridsynth/composition.hpp"

#include <cmath>

#include "gridsynth/errors.hpp"

namespace gridsynth {

std::string to_string(Period p) {
    switch (p) {
        case Period::Peak: return "Peak";
        case Period::Shoulder: return "Shoulder";
        case Period::Light: return "Light";
    }
    return "?";
}

const ComponentRow& CompositionTable::row(Period p, LoadClass c) const {
    auto it = rows.find({p, c});
    if (it == rows.end()) {
        throw ConfigError("composition table: missing row (" + to_string(p) + ", class " +
                          std::to_string(static_cast<int>(c)) + ")");
    }
    return it->second;
}

CompositionTable default_composition_table() {
    CompositionTable t;
    //                                         MotorA  B    C    D   Elec Static
    t.rows[{Period::Peak, LoadClass::Res}] = {8, 7, 2, 34, 15, 34};
    t.rows[{Period::Peak, LoadClass::Com}] = {12, 10, 4, 25, 18, 31};
    t.rows[{Period::Peak, LoadClass::Ind}] = {13, 22, 16, 0, 27, 22};
    t.rows[{Period::Shoulder, LoadClass::Res}] = {8, 7, 2, 25, 19, 39};
    t.rows[{Period::Shoulder, LoadClass::Com}] = {12, 10, 4, 20, 23, 31};
    t.rows[{Period::Shoulder, LoadClass::Ind}] = {13, 22, 16, 0, 27, 22};
    t.rows[{Period::Light, LoadClass::Res}] = {10, 8, 2, 0, 40, 40};
    t.rows[{Period::Light, LoadClass::Com}] = {12, 10, 4, 5, 38, 31};
    t.rows[{Period::Light, LoadClass::Ind}] = {13, 22, 16, 0, 27, 22};
    return t;
}

void validate_composition_table(const CompositionTable& table) {
    for (Period p : {Period::Peak, Period::Shoulder, Period::Light}) {
        for (LoadClass c : {LoadClass::Res, LoadClass::Com, LoadClass::Ind}) {
            const auto& row = table.row(p, c);
            double sum = 0.0;
            for (double v : row) {
                if (v < 0.0) throw ConfigError("composition table: negative percentage");
                sum += v;
            }
            if (std::abs(sum - 100.0) > 0.5) {
                throw ConfigError("composition table: row (" + to_string(p) + ") sums to " +
                                  std::to_string(sum));
            }
        }
    }
}

BusComposition compose(const Bus& bus, Period period, const CompositionTable& table) {
    const double rci_sum = bus.rci_ratio[0] + bus.rci_ratio[1] + bus.rci_ratio[2];
    if (std::abs(rci_sum - 1.0) > 1e-9) {
        throw ValidationError("compose: bus " + std::to_string(bus.id) + " rci_ratio sums to " +
                              std::to_string(rci_sum));
    }
    BusComposition out;
    out.bus_id = bus.id;
    out.period = period;
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& row = table.row(period, static_cast<LoadClass>(c));
        for (int i = 0; i < 6; ++i) {
            out.fractions[i] += bus.rci_ratio[c] * row[i] / 100.0;
        }
    }
    for (double f : out.fractions) total += f;
    if (total <= 0.0) throw ConfigError("compose: degenerate table, zero total");
    for (double& f : out.fractions) f /= total;
    return out;
}

PeriodWindows default_period_windows() {
    PeriodWindows w;
    w.windows = {{14, 19, Period::Peak},
                 {7, 14, Period::Shoulder},
                 {19, 22, Period::Shoulder},
                 {22, 31, Period::Light}};  // 22:00 to 07:00 next day
    return w;
}

void validate_period_windows(const PeriodWindows& w) {
    std::array<int, 24> cover = {};
    for (const auto& [start, end, period] : w.windows) {
        (void)period;
        if (end <= start) throw ConfigError("period windows: empty window");
        for (int h = start; h < end; ++h) ++cover[h % 24];
    }
    for (int h = 0; h < 24; ++h) {
        if (cover[h] == 0)
            throw ConfigError("period windows: hour " + std::to_string(h) + " uncovered");
        if (cover[h] > 1)
            throw ConfigError("period windows: hour " + std::to_string(h) + " covered twice");
    }
}

Period classify_period(int hour_of_day, const PeriodWindows& windows) {
    if (hour_of_day < 0 || hour_of_day >= 24)
        throw ValidationError("classify_period: hour out of [0, 24)");
    validate_period_windows(windows);
    for (const auto& [start, end, period] : windows.windows) {
        for (int h = start; h < end; ++h) {
            if (h % 24 == hour_of_day) return period;
        }
    }
    throw ConfigError("classify_period: unreachable, windows validated as covering");
}

}  // namespace gridsynth
