#include "gridsynth/powerflow.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "gridsynth/errors.hpp"

namespace gridsynth {

std::vector<std::vector<std::complex<double>>> build_ybus(const GridCase& grid_case,
                                                          const std::vector<int>& bus_ids) {
    const std::size_t n = bus_ids.size();
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[bus_ids[i]] = i;

    std::vector<std::vector<std::complex<double>>> ybus(
        n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
    for (const auto& line : grid_case.lines) {
        const std::size_t i = index.at(line.from_bus);
        const std::size_t j = index.at(line.to_bus);
        const std::complex<double> z(line.r_pu, line.x_pu);
        const std::complex<double> y = 1.0 / z;
        const std::complex<double> shunt(0.0, line.b_pu / 2.0);
        ybus[i][i] += y + shunt;
        ybus[j][j] += y + shunt;
        ybus[i][j] -= y;
        ybus[j][i] -= y;
    }
    return ybus;
}

void check_connected(const GridCase& grid_case) {
    if (grid_case.buses.empty()) throw ValidationError("check_connected: empty case");
    std::map<int, std::vector<int>> adjacency;
    for (const auto& b : grid_case.buses) adjacency[b.id];
    for (const auto& l : grid_case.lines) {
        adjacency[l.from_bus].push_back(l.to_bus);
        adjacency[l.to_bus].push_back(l.from_bus);
    }
    std::set<int> seen;
    std::queue<int> frontier;
    frontier.push(grid_case.buses.front().id);
    seen.insert(grid_case.buses.front().id);
    while (!frontier.empty()) {
        const int b = frontier.front();
        frontier.pop();
        for (int nb : adjacency[b]) {
            if (seen.insert(nb).second) frontier.push(nb);
        }
    }
    if (seen.size() != grid_case.buses.size()) {
        std::ostringstream msg;
        msg << "network is not connected; island buses:";
        for (const auto& b : grid_case.buses) {
            if (!seen.count(b.id)) msg << ' ' << b.id;
        }
        throw ValidationError(msg.str());
    }
}

void compute_injections(const std::vector<std::vector<std::complex<double>>>& ybus,
                        const std::vector<double>& v_mag, const std::vector<double>& v_angle,
                        std::vector<double>& p_out, std::vector<double>& q_out) {
    const std::size_t n = ybus.size();
    p_out.assign(n, 0.0);
    q_out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0.0, q = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double g = ybus[i][j].real();
            const double b = ybus[i][j].imag();
            const double theta = v_angle[i] - v_angle[j];
            p += v_mag[i] * v_mag[j] * (g * std::cos(theta) + b * std::sin(theta));
            q += v_mag[i] * v_mag[j] * (g * std::sin(theta) - b * std::cos(theta));
        }
        p_out[i] = p;
        q_out[i] = q;
    }
}

PowerFlowSolution solve_power_flow(const PowerFlowProblem& problem,
                                   const PowerFlowSolution* warm_start, double tolerance_pu,
                                   int max_iterations) {
    const std::size_t n = problem.bus_ids.size();
    int slack_count = 0;
    for (auto kind : problem.kinds)
        if (kind == BusKind::Slack) ++slack_count;
    if (slack_count != 1) throw ValidationError("solve_power_flow: exactly one slack required");

    PowerFlowSolution sol;
    sol.v_mag_pu.assign(n, 1.0);
    sol.v_angle_rad.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (problem.kinds[i] != BusKind::PQ) sol.v_mag_pu[i] = problem.v_setpoint_pu[i];
    }
    if (warm_start != nullptr && warm_start->v_mag_pu.size() == n) {
        sol.v_mag_pu = warm_start->v_mag_pu;
        sol.v_angle_rad = warm_start->v_angle_rad;
        for (std::size_t i = 0; i < n; ++i) {
            if (problem.kinds[i] != BusKind::PQ) sol.v_mag_pu[i] = problem.v_setpoint_pu[i];
            if (problem.kinds[i] == BusKind::Slack) sol.v_angle_rad[i] = 0.0;
        }
    }

    // Unknowns: angles at non-slack buses, magnitudes at PQ buses.
    std::vector<std::size_t> angle_vars, mag_vars;
    for (std::size_t i = 0; i < n; ++i) {
        if (problem.kinds[i] != BusKind::Slack) angle_vars.push_back(i);
        if (problem.kinds[i] == BusKind::PQ) mag_vars.push_back(i);
    }
    const std::size_t n_ang = angle_vars.size();
    const std::size_t n_mag = mag_vars.size();
    const std::size_t dim = n_ang + n_mag;

    std::vector<double> p_calc, q_calc;
    for (int iter = 0; iter < max_iterations; ++iter) {
        compute_injections(problem.ybus, sol.v_mag_pu, sol.v_angle_rad, p_calc, q_calc);

        Eigen::VectorXd mismatch(dim);
        double max_mismatch = 0.0;
        for (std::size_t a = 0; a < n_ang; ++a) {
            const std::size_t i = angle_vars[a];
            mismatch(a) = problem.p_injection_pu[i] - p_calc[i];
            max_mismatch = std::max(max_mismatch, std::abs(mismatch(a)));
        }
        for (std::size_t m = 0; m < n_mag; ++m) {
            const std::size_t i = mag_vars[m];
            mismatch(n_ang + m) = problem.q_injection_pu[i] - q_calc[i];
            max_mismatch = std::max(max_mismatch, std::abs(mismatch(n_ang + m)));
        }
        sol.max_mismatch_pu = max_mismatch;
        sol.iterations = iter;
        if (max_mismatch < tolerance_pu) {
            sol.converged = true;
            break;
        }

        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(dim, dim);
        auto dp_dtheta = [&](std::size_t i, std::size_t j) {
            if (i == j) return -q_calc[i] - problem.ybus[i][i].imag() * sol.v_mag_pu[i] * sol.v_mag_pu[i];
            const double g = problem.ybus[i][j].real();
            const double b = problem.ybus[i][j].imag();
            const double theta = sol.v_angle_rad[i] - sol.v_angle_rad[j];
            return sol.v_mag_pu[i] * sol.v_mag_pu[j] * (g * std::sin(theta) - b * std::cos(theta));
        };
        auto dp_dv = [&](std::size_t i, std::size_t j) {
            if (i == j) return p_calc[i] / sol.v_mag_pu[i] + problem.ybus[i][i].real() * sol.v_mag_pu[i];
            const double g = problem.ybus[i][j].real();
            const double b = problem.ybus[i][j].imag();
            const double theta = sol.v_angle_rad[i] - sol.v_angle_rad[j];
            return sol.v_mag_pu[i] * (g * std::cos(theta) + b * std::sin(theta));
        };
        auto dq_dtheta = [&](std::size_t i, std::size_t j) {
            if (i == j) return p_calc[i] - problem.ybus[i][i].real() * sol.v_mag_pu[i] * sol.v_mag_pu[i];
            const double g = problem.ybus[i][j].real();
            const double b = problem.ybus[i][j].imag();
            const double theta = sol.v_angle_rad[i] - sol.v_angle_rad[j];
            return -sol.v_mag_pu[i] * sol.v_mag_pu[j] * (g * std::cos(theta) + b * std::sin(theta));
        };
        auto dq_dv = [&](std::size_t i, std::size_t j) {
            if (i == j) return q_calc[i] / sol.v_mag_pu[i] - problem.ybus[i][i].imag() * sol.v_mag_pu[i];
            const double g = problem.ybus[i][j].real();
            const double b = problem.ybus[i][j].imag();
            const double theta = sol.v_angle_rad[i] - sol.v_angle_rad[j];
            return sol.v_mag_pu[i] * (g * std::sin(theta) - b * std::cos(theta));
        };

        for (std::size_t a = 0; a < n_ang; ++a) {
            for (std::size_t b = 0; b < n_ang; ++b)
                jac(a, b) = dp_dtheta(angle_vars[a], angle_vars[b]);
            for (std::size_t m = 0; m < n_mag; ++m)
                jac(a, n_ang + m) = dp_dv(angle_vars[a], mag_vars[m]);
        }
        for (std::size_t q = 0; q < n_mag; ++q) {
            for (std::size_t b = 0; b < n_ang; ++b)
                jac(n_ang + q, b) = dq_dtheta(mag_vars[q], angle_vars[b]);
            for (std::size_t m = 0; m < n_mag; ++m)
                jac(n_ang + q, n_ang + m) = dq_dv(mag_vars[q], mag_vars[m]);
        }

        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (!lu.isInvertible()) {
            throw RuntimeFailure("solve_power_flow: singular Jacobian at iteration " +
                                 std::to_string(iter) + ", max mismatch " +
                                 std::to_string(max_mismatch) + " p.u.");
        }
        Eigen::VectorXd step = lu.solve(mismatch);
        for (std::size_t a = 0; a < n_ang; ++a) sol.v_angle_rad[angle_vars[a]] += step(a);
        for (std::size_t m = 0; m < n_mag; ++m) sol.v_mag_pu[mag_vars[m]] += step(n_ang + m);
    }

    compute_injections(problem.ybus, sol.v_mag_pu, sol.v_angle_rad, sol.p_injection_pu,
                       sol.q_injection_pu);
    return sol;
}

}  // namespace gridsynth
