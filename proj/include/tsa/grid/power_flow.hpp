#pragma once

#include <cstdint>
#include <utility>

#include "tsa/grid/types.hpp"

namespace tsa::grid {

struct PowerFlowOptions {
    double tolerance = 1e-6;  // p.u., max |dP|,|dQ|
    int max_iterations = 30;
};

/// Newton-Raphson power flow on polar mismatch equations. PV buses hold their
/// setpoint magnitude, the slack holds magnitude and zero angle and absorbs
/// the system imbalance. Starts flat from setpoints.
///
/// Non-convergence is reported through the solution flags, not an exception;
/// a singular Jacobian throws NumericalError.
PowerFlowSolution solve_power_flow(const GridCase& gcase, const LoadingScenario& scenario,
                                   const PowerFlowOptions& options = {});

/// Unit loading: all factors 1, gen_scale 1.
LoadingScenario unit_loading(const GridCase& gcase);

struct LoadingOptions {
    // Per-bus independent factors by default; a single shared factor for all
    // buses when false (sensitivity studies).
    bool per_bus_factors = true;
    double factor_min = 0.7;
    double factor_max = 1.3;
    // Generation is scaled to cover the drawn load plus this fraction of the
    // base total generation as a loss allowance; the slack picks up the rest.
    double loss_allowance = 0.03;
};

/// Draws a randomized loading scenario. Deterministic for a fixed seed.
LoadingScenario sample_loading(const GridCase& gcase, std::uint64_t rng_seed,
                               const LoadingOptions& options = {});

/// Scaled per-bus load (p_load * factor, q_load * factor) for a scenario.
std::pair<double, double> scaled_load(const GridCase& gcase, const LoadingScenario& scenario,
                                      std::size_t bus_pos);

}  // namespace tsa::grid
