#pragma once

#include <vector>

#include "tsa/sim/stage_networks.hpp"

namespace tsa::sim {

struct Trajectory {
    double dt = 0.0;
    // states[k] is the machine state at t = k*dt; e_mag/p_mech are carried in
    // StageNetworks, so each entry stores delta/omega only.
    std::vector<std::vector<double>> delta;
    std::vector<std::vector<double>> omega;
    bool diverged = false;  // non-finite state reached; recorded part kept

    std::size_t steps() const { return delta.size(); }
};

/// Fixed-step RK4 integration of the classical swing equations
///   d delta_i/dt = omega_s * omega_i
///   d omega_i/dt = (p_mech_i - Pe_i - D_i * omega_i) / (2 H_i)
/// with the FaultOn network active on [0, clearing_time) and PostFault from
/// clearing_time on. dt must divide clearing_time to within one step.
Trajectory integrate_swing(const MachineState& init, const StageNetworks& nets,
                           const FaultScenario& scenario, double dt);

/// Transient stability index from the post-clearing angle spread:
/// delta_max = max over t >= clearing_time of max_{i,j} |delta_i - delta_j|
/// in degrees; TSI = (360 - delta_max) / (360 + delta_max), floored at -1.
/// Diverged trajectories are unstable by definition.
double compute_tsi(const Trajectory& trajectory, double clearing_time);

}  // namespace tsa::sim
