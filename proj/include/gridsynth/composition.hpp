#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gridsynth/grid_case.hpp"

namespace gridsynth {

enum class Period { Peak = 0, Shoulder = 1, Light = 2 };
enum class LoadClass { Res = 0, Com = 1, Ind = 2 };

std::string to_string(Period p);

// Six dynamic-load components: MotorA..MotorD, Electronic, Static.
using ComponentRow = std::array<double, 6>;

struct CompositionTable {
    // Percentages per (period, class) row; each row sums to 100.
    std::map<std::pair<Period, LoadClass>, ComponentRow> rows;

    const ComponentRow& row(Period p, LoadClass c) const;
};

struct BusComposition {
    int bus_id = 0;
    Period period = Period::Peak;
    ComponentRow fractions = {};  // sum exactly 1
};

// The default composition table (WECC CMPLDW sample percentages per period
// and customer class).
CompositionTable default_composition_table();

void validate_composition_table(const CompositionTable& table);

// Convex combination of the period's class rows weighted by the bus RCI
// ratio, renormalized to sum exactly 1.
BusComposition compose(const Bus& bus, Period period, const CompositionTable& table);

// Half-open hour windows per period; an hour belongs to the window that
// starts at it.
struct PeriodWindows {
    // windows[i] = (start_hour, end_hour, period); end may wrap past 24.
    std::vector<std::tuple<int, int, Period>> windows;
};

PeriodWindows default_period_windows();
void validate_period_windows(const PeriodWindows& w);
Period classify_period(int hour_of_day, const PeriodWindows& windows);

}  // namespace gridsynth
