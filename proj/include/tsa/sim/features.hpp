#pragma once

#include <string>
#include <vector>

#include "tsa/sim/stage_networks.hpp"

namespace tsa::sim {

/// Fixed feature layout for a case with a buses and b branches, 0-based:
///   [0, a)        V, bus order
///   [a, 2a)       theta (rad), bus order
///   [2a, 2a+b)    branch active power, from-end, branch order
///   [2a+b, 2a+2b) branch reactive power
struct FeatureLayout {
    std::size_t bus_count = 0;
    std::size_t branch_count = 0;

    std::size_t size() const { return 2 * bus_count + 2 * branch_count; }
    std::size_t v_index(std::size_t bus_pos) const { return bus_pos; }
    std::size_t theta_index(std::size_t bus_pos) const { return bus_count + bus_pos; }
    std::size_t p_index(std::size_t branch_pos) const { return 2 * bus_count + branch_pos; }
    std::size_t q_index(std::size_t branch_pos) const { return 2 * bus_count + branch_count + branch_pos; }

    /// Column names matching the dataset CSV header: V_1.., TH_1.., P_1.., Q_1..
    std::vector<std::string> names() const;
};

FeatureLayout feature_layout(const grid::GridCase& gcase);

/// Human-readable description of one feature column on a given case, e.g.
/// "V bus 8", "theta bus 8", "P line 8-9".
std::string describe_feature(const grid::GridCase& gcase, std::size_t feature_index);

/// Feature vector at the clearing instant: solves the requested stage's
/// algebraic network for bus voltages under the given machine state and emits
/// [V | theta | P | Q]. Branches out of service in that stage report (0, 0).
std::vector<double> snapshot_features(const grid::GridCase& gcase, const StageNetworks& nets,
                                      const MachineState& state, Stage stage = Stage::PostFault);

}  // namespace tsa::sim
