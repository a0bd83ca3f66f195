#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsa/grid/network.hpp"
#include "tsa/grid/power_flow.hpp"

namespace tsa::sim {

using grid::Complex;
using grid::ComplexMatrix;
using grid::GridCase;
using grid::LoadingScenario;
using grid::PowerFlowSolution;

/// One randomized three-phase fault case: where the fault sits, how long it
/// lasts, and the operating point it hits.
struct FaultScenario {
    LoadingScenario loading;
    int fault_branch = 0;        // 0-based branch index
    double fault_position = 0.5; // fraction from the from-end, in [0.1, 0.9]
    double clearing_time = 0.2;  // s, in [0.1, 0.3]
    double sim_horizon = 10.0;   // s
    std::uint64_t rng_seed = 0;

    void validate(const GridCase& gcase) const;
};

enum class Stage { PreFault, FaultOn, PostFault };

/// Classical-model rotor state. e_mag and p_mech are constant over a run.
struct MachineState {
    std::vector<double> delta;   // rad
    std::vector<double> omega;   // per-unit speed deviation
    std::vector<double> e_mag;   // p.u. internal EMF behind xd'
    std::vector<double> p_mech;  // p.u. on system base
};

/// Admittance matrix reduced to the generator internal nodes for one stage.
struct ReducedNetwork {
    ComplexMatrix y_reduced;
    Stage stage = Stage::PreFault;
};

/// Full algebraic description of one stage, kept so bus voltages can be
/// recovered after reduction: loads as shunt admittances, generator branches,
/// and the stage topology.
struct StageAlgebraic {
    // Bus-block system with generator internal EMFs as sources:
    //   Y_bb * V_bus + Y_bg * E = 0
    ComplexMatrix y_bb;  // bus x bus, includes load admittances and xd' shunt terms
    ComplexMatrix y_bg;  // bus x generator coupling
    std::vector<bool> in_service;  // branch mask for this stage
};

struct StageNetworks {
    std::array<ReducedNetwork, 3> reduced;  // indexed by Stage
    std::array<StageAlgebraic, 3> algebraic;
    MachineState initial;
    std::vector<double> inertia_m;   // 2*H_i on system base (coefficient of d omega/dt)
    std::vector<double> damping;     // D_i on system base
    double omega_s = 2.0 * 3.14159265358979323846 * 60.0;  // rad/s

    const ReducedNetwork& net(Stage s) const { return reduced[static_cast<std::size_t>(s)]; }
    const StageAlgebraic& alg(Stage s) const { return algebraic[static_cast<std::size_t>(s)]; }
};

struct StageOptions {
    double fault_conductance = 1e6;  // p.u. shunt modeling the bolted fault
    bool no_fault = false;           // all three stages equal PreFault (equilibrium runs)
    double frequency_hz = 60.0;
};

/// Builds the PreFault / FaultOn / PostFault networks reduced to generator
/// internal nodes, plus equilibrium initial conditions. Loads become constant
/// admittances at the solved voltages; the fault splits the branch into two
/// pi sections and grounds the split node; clearing removes the whole branch.
StageNetworks build_stage_networks(const GridCase& gcase, const PowerFlowSolution& solution,
                                   const FaultScenario& scenario, const StageOptions& options = {});

/// Air-gap power of every machine at the given rotor angles:
///   Pe_i = sum_j E_i E_j (G_ij cos(d_i - d_j) + B_ij sin(d_i - d_j))
std::vector<double> electrical_power(const MachineState& state, const ReducedNetwork& net);

/// Recovers full bus voltages for one stage from the machine state by solving
/// the stage's algebraic network with the EMFs as sources. Throws
/// NumericalError if the bus block is singular.
std::vector<Complex> solve_bus_voltages(const StageNetworks& nets, const MachineState& state,
                                        Stage stage);

}  // namespace tsa::sim
