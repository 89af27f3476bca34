#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gridsynth/grid_case.hpp"
#include "gridsynth/powerflow.hpp"
#include "gridsynth/tsb.hpp"

namespace gridsynth {

struct Timeline {
    std::uint64_t start_utc_us = 0;
    int step_seconds = 15;  // must divide 60
    int horizon_steps = 1;  // number of emitted frames
};

void validate_timeline(const Timeline& t);

// Per-step injection table on the emission grid, MW / MVAr. Row order
// follows the case bus / wind farm order.
struct InjectionTable {
    std::vector<std::vector<double>> load_p_mw;   // [bus][step]
    std::vector<std::vector<double>> load_q_mvar; // [bus][step]
    std::vector<std::vector<double>> wind_p_mw;   // [farm][step]
};

// Interpolates minutely loads onto the step grid, applies multiplicative
// Gaussian measurement noise per bus per step, derives Q from the power
// factor, and samples wind power at native step resolution.
InjectionTable build_timeline_inputs(const GridCase& grid_case,
                                     const std::map<int, std::vector<double>>& minutely_load_mw,
                                     const std::map<int, std::vector<double>>& wind_power_mw,
                                     const Timeline& timeline, double noise_sigma,
                                     double power_factor, std::uint64_t seed);

struct DispatchState {
    std::map<int, double> setpoint_mw;  // per non-wind generator
    int slack_bus_id = 0;
    int last_redispatch_step = -1;
};

// Proportional re-dispatch of non-wind generators to the forecast net load
// plus a loss fraction; limits respected with overflow redistributed.
DispatchState redispatch(const GridCase& grid_case, const DispatchState& previous,
                         double net_load_mw, double loss_fraction, int step);

struct MeasurementFrame {
    std::uint64_t timestamp_utc_us = 0;
    std::vector<double> v_mag_pu;     // per bus, case order
    std::vector<double> v_angle_rad;
    std::vector<double> gen_p_mw;     // per generator, case order
    std::vector<double> gen_q_mvar;
    std::vector<double> load_p_mw;    // per bus
    std::vector<double> load_q_mvar;
    bool converged = false;
    double max_mismatch_pu = 0.0;
};

// Quasi-steady-state AC power-flow snapshot for one instant.
MeasurementFrame solve_snapshot(const GridCase& grid_case, const InjectionTable& injections,
                                int step, const DispatchState& dispatch,
                                const MeasurementFrame* warm_start = nullptr);

struct EmitOptions {
    double noise_sigma = 0.01;
    double power_factor = 0.95;
    double loss_fraction = 0.0;
    int redispatch_interval_s = 900;
};

// Runs the full emission loop and packs the frames into a tsb container.
struct EmitResult {
    std::vector<MeasurementFrame> frames;
    TsbFile tsb;
};

EmitResult run_emission(const GridCase& grid_case,
                        const std::map<int, std::vector<double>>& minutely_load_mw,
                        const std::map<int, std::vector<double>>& wind_power_mw,
                        const Timeline& timeline, const EmitOptions& options,
                        std::uint64_t seed);

TsbFile frames_to_tsb(const GridCase& grid_case, const std::vector<MeasurementFrame>& frames);

}  // namespace gridsynth
