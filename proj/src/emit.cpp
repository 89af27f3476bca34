#include "gridsynth/emit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gridsynth/errors.hpp"
#include "gridsynth/kernels.hpp"
#include "gridsynth/rng.hpp"

namespace gridsynth {

void validate_timeline(const Timeline& t) {
    if (t.step_seconds <= 0 || 60 % t.step_seconds != 0) {
        throw ValidationError("timeline: step must divide 60 seconds");
    }
    if (t.horizon_steps < 1) throw ValidationError("timeline: horizon must be >= 1");
}

InjectionTable build_timeline_inputs(const GridCase& grid_case,
                                     const std::map<int, std::vector<double>>& minutely_load_mw,
                                     const std::map<int, std::vector<double>>& wind_power_mw,
                                     const Timeline& timeline, double noise_sigma,
                                     double power_factor, std::uint64_t seed) {
    validate_timeline(timeline);
    const int steps = timeline.horizon_steps;
    InjectionTable table;
    table.load_p_mw.resize(grid_case.buses.size());
    table.load_q_mvar.resize(grid_case.buses.size());
    table.wind_p_mw.resize(grid_case.wind_farms.size());

    for (std::size_t bi = 0; bi < grid_case.buses.size(); ++bi) {
        const int bus_id = grid_case.buses[bi].id;
        auto it = minutely_load_mw.find(bus_id);
        if (it == minutely_load_mw.end()) {
            throw ValidationError("build_timeline_inputs: no minutely load series for bus " +
                                  std::to_string(bus_id));
        }
        const auto& minutes = it->second;
        auto& row = table.load_p_mw[bi];
        row.resize(steps);
        for (int s = 0; s < steps; ++s) {
            const double t_sec = static_cast<double>(s) * timeline.step_seconds;
            const double minute_pos = t_sec / 60.0;
            const auto lo = static_cast<std::size_t>(minute_pos);
            if (lo + 1 >= minutes.size() && minute_pos > static_cast<double>(minutes.size() - 1)) {
                throw ValidationError("build_timeline_inputs: load series for bus " +
                                      std::to_string(bus_id) + " ends before step " +
                                      std::to_string(s) + " (t=" + std::to_string(t_sec) + " s)");
            }
            if (lo + 1 >= minutes.size()) {
                row[s] = minutes.back();
            } else {
                const double frac = minute_pos - static_cast<double>(lo);
                row[s] = minutes[lo] + (minutes[lo + 1] - minutes[lo]) * frac;
            }
        }
    }

    kernels::apply_noise_auto(table.load_p_mw, noise_sigma, Rng::mix(seed, 0x6e6f697365ULL));

    const double tan_phi = std::tan(std::acos(power_factor));
    for (std::size_t bi = 0; bi < grid_case.buses.size(); ++bi) {
        auto& q_row = table.load_q_mvar[bi];
        q_row.resize(steps);
        for (int s = 0; s < steps; ++s) q_row[s] = table.load_p_mw[bi][s] * tan_phi;
    }

    for (std::size_t fi = 0; fi < grid_case.wind_farms.size(); ++fi) {
        const int farm_id = grid_case.wind_farms[fi].id;
        auto it = wind_power_mw.find(farm_id);
        if (it == wind_power_mw.end()) {
            throw ValidationError("build_timeline_inputs: no wind power series for farm " +
                                  std::to_string(farm_id));
        }
        if (static_cast<int>(it->second.size()) < steps) {
            throw ValidationError("build_timeline_inputs: wind series for farm " +
                                  std::to_string(farm_id) + " covers " +
                                  std::to_string(it->second.size()) + " steps, need " +
                                  std::to_string(steps));
        }
        table.wind_p_mw[fi].assign(it->second.begin(), it->second.begin() + steps);
    }
    return table;
}

DispatchState redispatch(const GridCase& grid_case, const DispatchState& previous,
                         double net_load_mw, double loss_fraction, int step) {
    DispatchState state = previous;
    state.last_redispatch_step = step;

    std::vector<const Generator*> units;
    double pmax_total = 0.0;
    for (const auto& g : grid_case.generators) {
        units.push_back(&g);
        pmax_total += g.pmax_mw;
        if (g.is_slack) state.slack_bus_id = g.bus_id;
    }
    if (units.empty()) throw ValidationError("redispatch: case has no generators");

    const double target = std::max(0.0, net_load_mw) * (1.0 + loss_fraction);
    if (target > pmax_total + 1e-9) {
        throw RuntimeFailure("redispatch: insufficient dispatchable capacity, shortfall " +
                             std::to_string(target - pmax_total) + " MW");
    }

    // Proportional to pmax, with limit overflow redistributed among the
    // unclamped units until stable.
    std::map<int, double> setpoints;
    std::set<int> clamped;
    double remaining = target;
    for (int pass = 0; pass < static_cast<int>(units.size()) + 1; ++pass) {
        double free_pmax = 0.0;
        for (const auto* g : units) {
            if (!clamped.count(g->id)) free_pmax += g->pmax_mw;
        }
        if (free_pmax <= 0.0) break;
        bool newly_clamped = false;
        for (const auto* g : units) {
            if (clamped.count(g->id)) continue;
            setpoints[g->id] = remaining * g->pmax_mw / free_pmax;
        }
        for (const auto* g : units) {
            if (clamped.count(g->id)) continue;
            if (setpoints[g->id] > g->pmax_mw) {
                setpoints[g->id] = g->pmax_mw;
                clamped.insert(g->id);
                newly_clamped = true;
            } else if (setpoints[g->id] < g->pmin_mw) {
                setpoints[g->id] = g->pmin_mw;
                clamped.insert(g->id);
                newly_clamped = true;
            }
        }
        if (!newly_clamped) break;
        remaining = target;
        for (int id : clamped) remaining -= setpoints[id];
        remaining = std::max(0.0, remaining);
    }
    state.setpoint_mw = setpoints;
    return state;
}

MeasurementFrame solve_snapshot(const GridCase& grid_case, const InjectionTable& injections,
                                int step, const DispatchState& dispatch,
                                const MeasurementFrame* warm_start) {
    check_connected(grid_case);

    const std::size_t n = grid_case.buses.size();
    PowerFlowProblem problem;
    problem.bus_ids.reserve(n);
    for (const auto& b : grid_case.buses) problem.bus_ids.push_back(b.id);
    problem.ybus = build_ybus(grid_case, problem.bus_ids);
    problem.kinds.assign(n, BusKind::PQ);
    problem.p_injection_pu.assign(n, 0.0);
    problem.q_injection_pu.assign(n, 0.0);
    problem.v_setpoint_pu.assign(n, 1.0);

    std::map<int, std::size_t> bus_index;
    for (std::size_t i = 0; i < n; ++i) bus_index[problem.bus_ids[i]] = i;

    int slack_count = 0;
    for (const auto& g : grid_case.generators) {
        const std::size_t i = bus_index.at(g.bus_id);
        if (g.is_slack) {
            problem.kinds[i] = BusKind::Slack;
            ++slack_count;
        } else if (problem.kinds[i] == BusKind::PQ) {
            problem.kinds[i] = BusKind::PV;
        }
        problem.v_setpoint_pu[i] = g.v_setpoint_pu;
    }
    if (slack_count != 1) {
        throw ValidationError("solve_snapshot: case must designate exactly one slack generator");
    }

    const double base = grid_case.base_mva;
    for (std::size_t i = 0; i < n; ++i) {
        problem.p_injection_pu[i] -= injections.load_p_mw[i][step] / base;
        problem.q_injection_pu[i] -= injections.load_q_mvar[i][step] / base;
    }
    for (std::size_t fi = 0; fi < grid_case.wind_farms.size(); ++fi) {
        const std::size_t i = bus_index.at(grid_case.wind_farms[fi].bus_id);
        problem.p_injection_pu[i] += injections.wind_p_mw[fi][step] / base;
    }
    for (const auto& g : grid_case.generators) {
        if (g.is_slack) continue;
        auto it = dispatch.setpoint_mw.find(g.id);
        if (it != dispatch.setpoint_mw.end()) {
            problem.p_injection_pu[bus_index.at(g.bus_id)] += it->second / base;
        }
    }

    PowerFlowSolution warm;
    const PowerFlowSolution* warm_ptr = nullptr;
    if (warm_start != nullptr && warm_start->converged) {
        warm.v_mag_pu = warm_start->v_mag_pu;
        warm.v_angle_rad = warm_start->v_angle_rad;
        warm_ptr = &warm;
    }
    const PowerFlowSolution sol = solve_power_flow(problem, warm_ptr);

    MeasurementFrame frame;
    frame.converged = sol.converged;
    frame.max_mismatch_pu = sol.max_mismatch_pu;
    frame.v_mag_pu = sol.v_mag_pu;
    frame.v_angle_rad = sol.v_angle_rad;
    frame.load_p_mw.resize(n);
    frame.load_q_mvar.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        frame.load_p_mw[i] = injections.load_p_mw[i][step];
        frame.load_q_mvar[i] = injections.load_q_mvar[i][step];
    }

    // Per-generator outputs: dispatched P except at the slack, whose unit
    // absorbs the residual; Q from the bus balance split across the bus's
    // units in proportion to pmax.
    frame.gen_p_mw.assign(grid_case.generators.size(), 0.0);
    frame.gen_q_mvar.assign(grid_case.generators.size(), 0.0);
    std::map<int, double> bus_pmax;
    for (const auto& g : grid_case.generators) bus_pmax[g.bus_id] += g.pmax_mw;
    for (std::size_t gi = 0; gi < grid_case.generators.size(); ++gi) {
        const auto& g = grid_case.generators[gi];
        const std::size_t i = bus_index.at(g.bus_id);
        const double share = bus_pmax[g.bus_id] > 0.0 ? g.pmax_mw / bus_pmax[g.bus_id] : 1.0;
        double wind_at_bus = 0.0;
        for (std::size_t fi = 0; fi < grid_case.wind_farms.size(); ++fi) {
            if (grid_case.wind_farms[fi].bus_id == g.bus_id) {
                wind_at_bus += injections.wind_p_mw[fi][step];
            }
        }
        if (g.is_slack) {
            frame.gen_p_mw[gi] =
                sol.p_injection_pu[i] * base + frame.load_p_mw[i] - wind_at_bus;
        } else {
            auto it = dispatch.setpoint_mw.find(g.id);
            frame.gen_p_mw[gi] = it != dispatch.setpoint_mw.end() ? it->second : 0.0;
        }
        frame.gen_q_mvar[gi] = (sol.q_injection_pu[i] * base + frame.load_q_mvar[i]) * share;
    }
    return frame;
}

TsbFile frames_to_tsb(const GridCase& grid_case, const std::vector<MeasurementFrame>& frames) {
    TsbFile file;
    for (const auto& b : grid_case.buses) {
        file.channels.push_back({"bus" + std::to_string(b.id) + ".vm", ChannelUnit::PerUnit});
        file.channels.push_back({"bus" + std::to_string(b.id) + ".va", ChannelUnit::Radians});
    }
    for (const auto& g : grid_case.generators) {
        file.channels.push_back({"gen" + std::to_string(g.id) + ".p", ChannelUnit::Megawatts});
        file.channels.push_back({"gen" + std::to_string(g.id) + ".q", ChannelUnit::Megavars});
    }
    for (const auto& b : grid_case.buses) {
        file.channels.push_back({"load" + std::to_string(b.id) + ".p", ChannelUnit::Megawatts});
        file.channels.push_back({"load" + std::to_string(b.id) + ".q", ChannelUnit::Megavars});
    }
    for (const auto& frame : frames) {
        TsbFrame out;
        out.timestamp_utc_us = frame.timestamp_utc_us;
        out.values.reserve(file.channels.size());
        for (std::size_t i = 0; i < grid_case.buses.size(); ++i) {
            out.values.push_back(frame.v_mag_pu[i]);
            out.values.push_back(frame.v_angle_rad[i]);
        }
        for (std::size_t g = 0; g < grid_case.generators.size(); ++g) {
            out.values.push_back(frame.gen_p_mw[g]);
            out.values.push_back(frame.gen_q_mvar[g]);
        }
        for (std::size_t i = 0; i < grid_case.buses.size(); ++i) {
            out.values.push_back(frame.load_p_mw[i]);
            out.values.push_back(frame.load_q_mvar[i]);
        }
        file.frames.push_back(std::move(out));
    }
    return file;
}

EmitResult run_emission(const GridCase& grid_case,
                        const std::map<int, std::vector<double>>& minutely_load_mw,
                        const std::map<int, std::vector<double>>& wind_power_mw,
                        const Timeline& timeline, const EmitOptions& options,
                        std::uint64_t seed) {
    validate_timeline(timeline);
    const InjectionTable table = build_timeline_inputs(
        grid_case, minutely_load_mw, wind_power_mw, timeline, options.noise_sigma,
        options.power_factor, seed);

    if (options.redispatch_interval_s % timeline.step_seconds != 0) {
        throw ConfigError("run_emission: redispatch interval must be a multiple of the step");
    }
    const int redispatch_every = options.redispatch_interval_s / timeline.step_seconds;

    EmitResult result;
    DispatchState dispatch;
    const MeasurementFrame* warm = nullptr;
    for (int step = 0; step < timeline.horizon_steps; ++step) {
        if (step % redispatch_every == 0) {
            double total_load = 0.0, total_wind = 0.0;
            for (const auto& row : table.load_p_mw) total_load += row[step];
            for (const auto& row : table.wind_p_mw) total_wind += row[step];
            dispatch = redispatch(grid_case, dispatch, total_load - total_wind,
                                  options.loss_fraction, step);
        }
        MeasurementFrame frame = solve_snapshot(grid_case, table, step, dispatch, warm);
        frame.timestamp_utc_us = timeline.start_utc_us +
                                 static_cast<std::uint64_t>(step) * timeline.step_seconds *
                                     1000000ULL;
        result.frames.push_back(std::move(frame));
        warm = &result.frames.back();
    }
    result.tsb = frames_to_tsb(grid_case, result.frames);
    return result;
}

}  // namespace gridsynth
