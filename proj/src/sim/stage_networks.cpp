#include "tsa/sim/stage_networks.hpp"

#include <cmath>

#include "tsa/common.hpp"
#include "tsa/sim/reduction.hpp"

namespace tsa::sim {

void FaultScenario::validate(const GridCase& gcase) const {
    if (fault_branch < 0 || static_cast<std::size_t>(fault_branch) >= gcase.branch_count()) {
        throw ValidationError("fault branch index out of range");
    }
    if (fault_position < 0.1 || fault_position > 0.9) {
        throw ValidationError("fault position must lie in [0.1, 0.9]");
    }
    if (clearing_time < 0.1 || clearing_time > 0.3) {
        throw ValidationError("clearing time must lie in [0.1, 0.3] s");
    }
    if (sim_horizon < clearing_time) {
        throw ValidationError("simulation horizon shorter than clearing time");
    }
}

namespace {

// Load and shunt admittances on the bus diagonal, loads converted at the
// solved voltages (constant-impedance load model).
ComplexMatrix bus_matrix_with_loads(const GridCase& gcase, const PowerFlowSolution& solution,
                                    const FaultScenario& scenario,
                                    const std::vector<bool>& in_service) {
    ComplexMatrix y = grid::build_ybus(gcase, in_service);
    for (std::size_t i = 0; i < gcase.bus_count(); ++i) {
        const auto [pl, ql] = grid::scaled_load(gcase, scenario.loading, i);
        const double v2 = solution.v_mag[i] * solution.v_mag[i];
        if (v2 <= 0.0) throw NumericalError("zero bus voltage in load conversion");
        y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += Complex(pl, -ql) / v2;
    }
    return y;
}

// Generator transient reactance on system base.
double xd_prime_system(const GridCase& gcase, const grid::Generator& gen) {
    return gen.xd_prime * gcase.system_mva_base / gen.mva_base;
}

struct AugmentedStage {
    ReducedNetwork reduced;
    StageAlgebraic algebraic;
};

// Appends generator internal nodes behind xd' to the bus matrix, reduces to
// them, and keeps the bus-block algebraic system for voltage recovery.
AugmentedStage assemble_stage(const GridCase& gcase, const ComplexMatrix& y_bus_block,
                              Stage stage, const std::vector<bool>& in_service) {
    const auto nb = y_bus_block.rows();
    const auto ng = static_cast<Eigen::Index>(gcase.generators.size());
    ComplexMatrix y_aug = ComplexMatrix::Zero(nb + ng, nb + ng);
    y_aug.topLeftCorner(nb, nb) = y_bus_block;

    for (Eigen::Index g = 0; g < ng; ++g) {
        const auto& gen = gcase.generators[static_cast<std::size_t>(g)];
        const auto bus = static_cast<Eigen::Index>(gcase.bus_index(gen.bus));
        const Complex y_gen = 1.0 / Complex(0.0, xd_prime_system(gcase, gen));
        y_aug(bus, bus) += y_gen;
        y_aug(nb + g, nb + g) += y_gen;
        y_aug(bus, nb + g) -= y_gen;
        y_aug(nb + g, bus) -= y_gen;
    }

    std::vector<std::size_t> keep(static_cast<std::size_t>(ng));
    for (Eigen::Index g = 0; g < ng; ++g) keep[static_cast<std::size_t>(g)] = static_cast<std::size_t>(nb + g);

    AugmentedStage out;
    out.reduced.stage = stage;
    out.reduced.y_reduced = kron_reduce(y_aug, keep);
    // The algebraic system keeps only physical buses; a fault node (if any)
    // lives beyond nb and is eliminated before this call.
    out.algebraic.y_bb = y_aug.topLeftCorner(nb, nb);
    out.algebraic.y_bg = y_aug.topRightCorner(nb, ng);
    out.algebraic.in_service = in_service;
    return out;
}

}  // namespace

StageNetworks build_stage_networks(const GridCase& gcase, const PowerFlowSolution& solution,
                                   const FaultScenario& scenario, const StageOptions& options) {
    if (!solution.converged) throw ValidationError("stage networks need a converged power flow");
    scenario.validate(gcase);
    if (!options.no_fault &&
        gcase.branches[static_cast<std::size_t>(scenario.fault_branch)].status != grid::BranchStatus::InService) {
        throw ValidationError("fault branch is not in service");
    }

    const std::size_t nb = gcase.bus_count();
    const std::size_t ng = gcase.generators.size();
    if (ng == 0) throw ValidationError("case has no generators to simulate");

    StageNetworks nets;
    nets.omega_s = 2.0 * 3.14159265358979323846 * options.frequency_hz;

    const std::vector<bool> full_mask = grid::service_mask(gcase);

    // PreFault.
    {
        const ComplexMatrix y = bus_matrix_with_loads(gcase, solution, scenario, full_mask);
        auto stage = assemble_stage(gcase, y, Stage::PreFault, full_mask);
        nets.reduced[0] = std::move(stage.reduced);
        nets.algebraic[0] = std::move(stage.algebraic);
    }

    if (options.no_fault) {
        nets.reduced[1] = nets.reduced[0];
        nets.reduced[2] = nets.reduced[0];
        nets.reduced[1].stage = Stage::FaultOn;
        nets.reduced[2].stage = Stage::PostFault;
        nets.algebraic[1] = nets.algebraic[0];
        nets.algebraic[2] = nets.algebraic[0];
    } else {
        const auto& fault_br = gcase.branches[static_cast<std::size_t>(scenario.fault_branch)];
        std::vector<bool> faulted_mask = full_mask;
        faulted_mask[static_cast<std::size_t>(scenario.fault_branch)] = false;

        // FaultOn: both pi sections of the split branch plus the grounded
        // fault node, eliminated before the machine reduction.
        {
            ComplexMatrix y_buses = bus_matrix_with_loads(gcase, solution, scenario, faulted_mask);
            ComplexMatrix y = ComplexMatrix::Zero(static_cast<Eigen::Index>(nb + 1),
                                                  static_cast<Eigen::Index>(nb + 1));
            y.topLeftCorner(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb)) = y_buses;

            const auto from = static_cast<Eigen::Index>(gcase.bus_index(fault_br.from_bus));
            const auto to = static_cast<Eigen::Index>(gcase.bus_index(fault_br.to_bus));
            const auto fault_node = static_cast<Eigen::Index>(nb);
            const double pos = scenario.fault_position;

            const Complex z_total(fault_br.r, fault_br.x);
            const Complex y1 = 1.0 / (z_total * pos);
            const Complex y2 = 1.0 / (z_total * (1.0 - pos));
            const Complex b1(0.0, fault_br.b_charging * pos / 2.0);
            const Complex b2(0.0, fault_br.b_charging * (1.0 - pos) / 2.0);

            y(from, from) += y1 + b1;
            y(fault_node, fault_node) += y1 + b1 + y2 + b2;
            y(from, fault_node) -= y1;
            y(fault_node, from) -= y1;
            y(to, to) += y2 + b2;
            y(to, fault_node) -= y2;
            y(fault_node, to) -= y2;

            y(fault_node, fault_node) += Complex(options.fault_conductance, 0.0);

            // Eliminate the fault node first so the algebraic system stays on
            // physical buses.
            std::vector<std::size_t> keep_buses(nb);
            for (std::size_t i = 0; i < nb; ++i) keep_buses[i] = i;
            const ComplexMatrix y_bus_only = kron_reduce(y, keep_buses);

            auto stage = assemble_stage(gcase, y_bus_only, Stage::FaultOn, faulted_mask);
            nets.reduced[1] = std::move(stage.reduced);
            nets.algebraic[1] = std::move(stage.algebraic);
        }

        // PostFault: faulted branch removed entirely.
        {
            const ComplexMatrix y = bus_matrix_with_loads(gcase, solution, scenario, faulted_mask);
            auto stage = assemble_stage(gcase, y, Stage::PostFault, faulted_mask);
            nets.reduced[2] = std::move(stage.reduced);
            nets.algebraic[2] = std::move(stage.algebraic);
        }
    }

    // Machine constants on system base.
    nets.inertia_m.resize(ng);
    nets.damping.resize(ng);
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& gen = gcase.generators[g];
        const double h_system = gen.inertia_h * gen.mva_base / gcase.system_mva_base;
        nets.inertia_m[g] = 2.0 * h_system;
        nets.damping[g] = gen.damping_d * gen.mva_base / gcase.system_mva_base;
    }

    // Initial conditions: internal EMF phasors from the solved flows, zero
    // speed deviation, mechanical power balancing the pre-fault electrical
    // power exactly.
    MachineState init;
    init.delta.resize(ng);
    init.omega.assign(ng, 0.0);
    init.e_mag.resize(ng);
    init.p_mech.resize(ng);
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& gen = gcase.generators[g];
        const std::size_t bus = gcase.bus_index(gen.bus);
        const auto [pl, ql] = grid::scaled_load(gcase, scenario.loading, bus);
        // Machine terminal output = net injection plus the local load.
        const double p_gen = solution.p_inj[bus] + pl;
        const double q_gen = solution.q_inj[bus] + ql;
        const Complex v_term = std::polar(solution.v_mag[bus], solution.v_ang[bus]);
        const Complex i_term = std::conj(Complex(p_gen, q_gen) / v_term);
        const Complex emf = v_term + Complex(0.0, xd_prime_system(gcase, gen)) * i_term;
        init.delta[g] = std::arg(emf);
        init.e_mag[g] = std::abs(emf);
    }
    init.p_mech = electrical_power(init, nets.reduced[0]);
    nets.initial = std::move(init);
    return nets;
}

std::vector<double> electrical_power(const MachineState& state, const ReducedNetwork& net) {
    const std::size_t ng = state.delta.size();
    if (static_cast<std::size_t>(net.y_reduced.rows()) != ng) {
        throw ValidationError("machine state and reduced network dimensions disagree");
    }
    std::vector<double> pe(ng, 0.0);
    for (std::size_t i = 0; i < ng; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < ng; ++j) {
            const Complex y = net.y_reduced(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const double a = state.delta[i] - state.delta[j];
            acc += state.e_mag[i] * state.e_mag[j] * (y.real() * std::cos(a) + y.imag() * std::sin(a));
        }
        pe[i] = acc;
    }
    return pe;
}

std::vector<Complex> solve_bus_voltages(const StageNetworks& nets, const MachineState& state,
                                        Stage stage) {
    const auto& alg = nets.alg(stage);
    const auto ng = static_cast<Eigen::Index>(state.delta.size());
    if (alg.y_bg.cols() != ng) throw ValidationError("machine state does not match stage network");

    Eigen::VectorXcd emf(ng);
    for (Eigen::Index g = 0; g < ng; ++g) {
        emf[g] = std::polar(state.e_mag[static_cast<std::size_t>(g)],
                            state.delta[static_cast<std::size_t>(g)]);
    }
    // Y_bb V = -Y_bg E  (no external current injection at load buses).
    Eigen::FullPivLU<ComplexMatrix> lu(alg.y_bb);
    if (!lu.isInvertible()) throw NumericalError("stage network bus block is singular");
    const Eigen::VectorXcd v = lu.solve((-alg.y_bg * emf).eval());
    return {v.data(), v.data() + v.size()};
}

}  // namespace tsa::sim
