#include "tsa/sim/swing.hpp"

#include <cmath>

#include "tsa/common.hpp"

namespace tsa::sim {

namespace {

struct Derivative {
    std::vector<double> d_delta;
    std::vector<double> d_omega;
};

void eval_derivative(const StageNetworks& nets, const ReducedNetwork& net,
                     const MachineState& scratch, Derivative& out) {
    const std::size_t ng = scratch.delta.size();
    const std::vector<double> pe = electrical_power(scratch, net);
    out.d_delta.resize(ng);
    out.d_omega.resize(ng);
    for (std::size_t i = 0; i < ng; ++i) {
        out.d_delta[i] = nets.omega_s * scratch.omega[i];
        out.d_omega[i] =
            (scratch.p_mech[i] - pe[i] - nets.damping[i] * scratch.omega[i]) / nets.inertia_m[i];
    }
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

Trajectory integrate_swing(const MachineState& init, const StageNetworks& nets,
                           const FaultScenario& scenario, double dt) {
    if (dt <= 0.0) throw ValidationError("integration step must be positive");
    const auto clearing_step = static_cast<std::size_t>(std::llround(scenario.clearing_time / dt));
    if (std::abs(clearing_step * dt - scenario.clearing_time) > dt * 0.5 + 1e-12) {
        throw ValidationError("dt does not divide the clearing time within one step");
    }
    const auto total_steps = static_cast<std::size_t>(std::llround(scenario.sim_horizon / dt));

    const std::size_t ng = init.delta.size();
    Trajectory traj;
    traj.dt = dt;
    traj.delta.reserve(total_steps + 1);
    traj.omega.reserve(total_steps + 1);
    traj.delta.push_back(init.delta);
    traj.omega.push_back(init.omega);

    MachineState state = init;
    MachineState scratch = init;
    Derivative k1, k2, k3, k4;

    for (std::size_t step = 0; step < total_steps; ++step) {
        const ReducedNetwork& net =
            step < clearing_step ? nets.net(Stage::FaultOn) : nets.net(Stage::PostFault);

        eval_derivative(nets, net, state, k1);
        for (std::size_t i = 0; i < ng; ++i) {
            scratch.delta[i] = state.delta[i] + 0.5 * dt * k1.d_delta[i];
            scratch.omega[i] = state.omega[i] + 0.5 * dt * k1.d_omega[i];
        }
        eval_derivative(nets, net, scratch, k2);
        for (std::size_t i = 0; i < ng; ++i) {
            scratch.delta[i] = state.delta[i] + 0.5 * dt * k2.d_delta[i];
            scratch.omega[i] = state.omega[i] + 0.5 * dt * k2.d_omega[i];
        }
        eval_derivative(nets, net, scratch, k3);
        for (std::size_t i = 0; i < ng; ++i) {
            scratch.delta[i] = state.delta[i] + dt * k3.d_delta[i];
            scratch.omega[i] = state.omega[i] + dt * k3.d_omega[i];
        }
        eval_derivative(nets, net, scratch, k4);
        for (std::size_t i = 0; i < ng; ++i) {
            state.delta[i] +=
                dt / 6.0 * (k1.d_delta[i] + 2.0 * k2.d_delta[i] + 2.0 * k3.d_delta[i] + k4.d_delta[i]);
            state.omega[i] +=
                dt / 6.0 * (k1.d_omega[i] + 2.0 * k2.d_omega[i] + 2.0 * k3.d_omega[i] + k4.d_omega[i]);
        }

        if (!all_finite(state.delta) || !all_finite(state.omega)) {
            traj.diverged = true;
            break;
        }
        traj.delta.push_back(state.delta);
        traj.omega.push_back(state.omega);
    }
    return traj;
}

double compute_tsi(const Trajectory& trajectory, double clearing_time) {
    if (trajectory.delta.empty()) throw ValidationError("empty trajectory");
    const auto first =
        std::min<std::size_t>(static_cast<std::size_t>(std::llround(clearing_time / trajectory.dt)),
                              trajectory.delta.size() - 1);

    double max_spread_rad = 0.0;
    for (std::size_t k = first; k < trajectory.delta.size(); ++k) {
        const auto& d = trajectory.delta[k];
        double lo = d[0], hi = d[0];
        for (double v : d) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        max_spread_rad = std::max(max_spread_rad, hi - lo);
    }
    const double delta_max_deg = max_spread_rad * 180.0 / 3.14159265358979323846;
    double tsi = (360.0 - delta_max_deg) / (360.0 + delta_max_deg);
    if (trajectory.diverged && tsi > 0.0) tsi = -1.0;  // diverged runs are unstable
    return std::max(tsi, -1.0);
}

}  // namespace tsa::sim
