#include "tsa/grid/power_flow.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "tsa/common.hpp"
#include "tsa/grid/network.hpp"

namespace tsa::grid {

LoadingScenario unit_loading(const GridCase& gcase) {
    return {std::vector<double>(gcase.bus_count(), 1.0), 1.0};
}

std::pair<double, double> scaled_load(const GridCase& gcase, const LoadingScenario& scenario,
                                      std::size_t bus_pos) {
    const double f = scenario.load_factors.at(bus_pos);
    return {gcase.buses[bus_pos].p_load * f, gcase.buses[bus_pos].q_load * f};
}

LoadingScenario sample_loading(const GridCase& gcase, std::uint64_t rng_seed,
                               const LoadingOptions& options) {
    Rng rng(rng_seed);
    LoadingScenario scenario;
    scenario.load_factors.resize(gcase.bus_count());
    if (options.per_bus_factors) {
        for (auto& f : scenario.load_factors) f = rng.uniform(options.factor_min, options.factor_max);
    } else {
        const double shared = rng.uniform(options.factor_min, options.factor_max);
        for (auto& f : scenario.load_factors) f = shared;
    }

    double scaled_total_load = 0.0;
    double base_total_gen = 0.0;
    for (std::size_t i = 0; i < gcase.bus_count(); ++i) {
        scaled_total_load += gcase.buses[i].p_load * scenario.load_factors[i];
    }
    for (const auto& gen : gcase.generators) base_total_gen += gen.p_gen;

    if (base_total_gen > 0.0) {
        // Loss allowance is a fixed slice of base generation so the degenerate
        // zero-load case still commands nonzero output.
        scenario.gen_scale = (scaled_total_load + options.loss_allowance * base_total_gen) / base_total_gen;
    } else {
        scenario.gen_scale = 1.0;
    }
    return scenario;
}

PowerFlowSolution solve_power_flow(const GridCase& gcase, const LoadingScenario& scenario,
                                   const PowerFlowOptions& options) {
    const std::size_t n = gcase.bus_count();
    if (scenario.load_factors.size() != n) {
        throw ValidationError("loading scenario does not cover all buses");
    }

    const ComplexMatrix ybus = build_ybus(gcase);

    // Specified net injections. The slack row is unconstrained; PV buses are
    // constrained in P only.
    std::vector<double> p_spec(n, 0.0), q_spec(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [pl, ql] = scaled_load(gcase, scenario, i);
        p_spec[i] -= pl;
        q_spec[i] -= ql;
    }
    for (const auto& gen : gcase.generators) {
        p_spec[gcase.bus_index(gen.bus)] += gen.p_gen * scenario.gen_scale;
    }

    const std::size_t slack = gcase.slack_index();
    std::vector<std::size_t> ang_vars;  // buses with a P equation / theta unknown
    std::vector<std::size_t> mag_vars;  // buses with a Q equation / V unknown
    for (std::size_t i = 0; i < n; ++i) {
        if (i == slack) continue;
        ang_vars.push_back(i);
        if (gcase.buses[i].kind == BusKind::PQ) mag_vars.push_back(i);
    }
    const std::size_t n_ang = ang_vars.size();
    const std::size_t n_var = n_ang + mag_vars.size();

    // Flat start from setpoints.
    Eigen::VectorXd vm(n), va = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        vm[static_cast<Eigen::Index>(i)] =
            gcase.buses[i].kind == BusKind::PQ ? 1.0 : gcase.buses[i].v_setpoint;
    }

    const auto calc_injections = [&](Eigen::VectorXd& p, Eigen::VectorXd& q) {
        p.setZero(static_cast<Eigen::Index>(n));
        q.setZero(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            double pi = 0.0, qi = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const Complex y = ybus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (y == Complex(0.0, 0.0)) continue;
                const double a = va[static_cast<Eigen::Index>(i)] - va[static_cast<Eigen::Index>(j)];
                const double vv = vm[static_cast<Eigen::Index>(i)] * vm[static_cast<Eigen::Index>(j)];
                pi += vv * (y.real() * std::cos(a) + y.imag() * std::sin(a));
                qi += vv * (y.real() * std::sin(a) - y.imag() * std::cos(a));
            }
            p[static_cast<Eigen::Index>(i)] = pi;
            q[static_cast<Eigen::Index>(i)] = qi;
        }
    };

    PowerFlowSolution sol;
    Eigen::VectorXd p_calc, q_calc;
    int iter = 0;
    double max_mismatch = 0.0;

    for (;; ++iter) {
        calc_injections(p_calc, q_calc);

        Eigen::VectorXd mismatch(static_cast<Eigen::Index>(n_var));
        for (std::size_t k = 0; k < n_ang; ++k) {
            mismatch[static_cast<Eigen::Index>(k)] =
                p_spec[ang_vars[k]] - p_calc[static_cast<Eigen::Index>(ang_vars[k])];
        }
        for (std::size_t k = 0; k < mag_vars.size(); ++k) {
            mismatch[static_cast<Eigen::Index>(n_ang + k)] =
                q_spec[mag_vars[k]] - q_calc[static_cast<Eigen::Index>(mag_vars[k])];
        }
        max_mismatch = n_var == 0 ? 0.0 : mismatch.lpNorm<Eigen::Infinity>();

        if (max_mismatch < options.tolerance) {
            sol.converged = true;
            break;
        }
        if (iter >= options.max_iterations) break;

        // Polar Jacobian: [dP/dtheta dP/dV; dQ/dtheta dQ/dV].
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_var),
                                                    static_cast<Eigen::Index>(n_var));
        const auto y_at = [&](std::size_t i, std::size_t j) {
            return ybus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        };
        for (std::size_t row = 0; row < n_var; ++row) {
            const bool p_row = row < n_ang;
            const std::size_t i = p_row ? ang_vars[row] : mag_vars[row - n_ang];
            const double vi = vm[static_cast<Eigen::Index>(i)];
            const double pi = p_calc[static_cast<Eigen::Index>(i)];
            const double qi = q_calc[static_cast<Eigen::Index>(i)];
            const Complex yii = y_at(i, i);

            for (std::size_t col = 0; col < n_var; ++col) {
                const bool ang_col = col < n_ang;
                const std::size_t j = ang_col ? ang_vars[col] : mag_vars[col - n_ang];
                const double vj = vm[static_cast<Eigen::Index>(j)];
                double value;
                if (i == j) {
                    if (p_row && ang_col) value = -qi - yii.imag() * vi * vi;
                    else if (p_row && !ang_col) value = pi / vi + yii.real() * vi;
                    else if (!p_row && ang_col) value = pi - yii.real() * vi * vi;
                    else value = qi / vi - yii.imag() * vi;
                } else {
                    const Complex yij = y_at(i, j);
                    if (yij == Complex(0.0, 0.0)) continue;
                    const double a = va[static_cast<Eigen::Index>(i)] - va[static_cast<Eigen::Index>(j)];
                    const double g = yij.real(), b = yij.imag();
                    if (p_row && ang_col) value = vi * vj * (g * std::sin(a) - b * std::cos(a));
                    else if (p_row && !ang_col) value = vi * (g * std::cos(a) + b * std::sin(a));
                    else if (!p_row && ang_col) value = -vi * vj * (g * std::cos(a) + b * std::sin(a));
                    else value = vi * (g * std::sin(a) - b * std::cos(a));
                }
                jac(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
            }
        }

        Eigen::VectorXd step = jac.colPivHouseholderQr().solve(mismatch);
        if (!step.allFinite()) throw NumericalError("singular power-flow Jacobian");

        for (std::size_t k = 0; k < n_ang; ++k) {
            va[static_cast<Eigen::Index>(ang_vars[k])] += step[static_cast<Eigen::Index>(k)];
        }
        for (std::size_t k = 0; k < mag_vars.size(); ++k) {
            vm[static_cast<Eigen::Index>(mag_vars[k])] += step[static_cast<Eigen::Index>(n_ang + k)];
        }
        if (!vm.allFinite() || !va.allFinite()) throw NumericalError("power flow diverged to non-finite state");
    }

    calc_injections(p_calc, q_calc);
    sol.iterations = iter;
    sol.max_mismatch = max_mismatch;
    sol.v_mag.assign(vm.data(), vm.data() + n);
    sol.v_ang.assign(va.data(), va.data() + n);
    sol.p_inj.assign(p_calc.data(), p_calc.data() + n);
    sol.q_inj.assign(q_calc.data(), q_calc.data() + n);
    return sol;
}

}  // namespace tsa::grid
