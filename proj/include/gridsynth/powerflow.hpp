#pragma once

#include <complex>
#include <map>
#include <vector>

#include "gridsynth/grid_case.hpp"

namespace gridsynth {

enum class BusKind { Slack, PV, PQ };

// One AC power-flow problem: per-bus net scheduled injections in p.u. on the
// case base. Generators at PV buses hold their voltage setpoint.
struct PowerFlowProblem {
    std::vector<int> bus_ids;                 // solution ordering
    std::vector<BusKind> kinds;
    std::vector<double> p_injection_pu;       // scheduled P (gen - load)
    std::vector<double> q_injection_pu;       // scheduled Q at PQ buses
    std::vector<double> v_setpoint_pu;        // at slack and PV buses
    std::vector<std::vector<std::complex<double>>> ybus;
};

struct PowerFlowSolution {
    bool converged = false;
    int iterations = 0;
    std::vector<double> v_mag_pu;
    std::vector<double> v_angle_rad;
    // Net injections realized at the solution (p.u.), from the admittance
    // model; at PQ buses these match the schedule when converged.
    std::vector<double> p_injection_pu;
    std::vector<double> q_injection_pu;
    double max_mismatch_pu = 0.0;
};

// Builds the bus admittance matrix from the case lines.
std::vector<std::vector<std::complex<double>>> build_ybus(const GridCase& grid_case,
                                                          const std::vector<int>& bus_ids);

// Verifies the network is connected; throws naming the island otherwise.
void check_connected(const GridCase& grid_case);

// Newton-Raphson in polar form. warm_start, when provided, seeds the state.
PowerFlowSolution solve_power_flow(const PowerFlowProblem& problem,
                                   const PowerFlowSolution* warm_start = nullptr,
                                   double tolerance_pu = 1e-10, int max_iterations = 30);

// Recomputes complex power injections at a candidate state directly from the
// admittance matrix (used both internally and as an independent check).
void compute_injections(const std::vector<std::vector<std::complex<double>>>& ybus,
                        const std::vector<double>& v_mag, const std::vector<double>& v_angle,
                        std::vector<double>& p_out, std::vector<double>& q_out);

}  // namespace gridsynth
