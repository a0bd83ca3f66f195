#include "tsa/grid/network.hpp"

#include <cmath>

#include "tsa/common.hpp"

namespace tsa::grid {

std::vector<bool> service_mask(const GridCase& gcase) {
    std::vector<bool> mask(gcase.branches.size());
    for (std::size_t i = 0; i < gcase.branches.size(); ++i) {
        mask[i] = gcase.branches[i].status == BranchStatus::InService;
    }
    return mask;
}

ComplexMatrix build_ybus(const GridCase& gcase, const std::vector<bool>& in_service) {
    if (in_service.size() != gcase.branches.size()) {
        throw ValidationError("in-service mask length does not match branch count");
    }
    const auto n = static_cast<Eigen::Index>(gcase.bus_count());
    ComplexMatrix ybus = ComplexMatrix::Zero(n, n);

    for (std::size_t b = 0; b < gcase.branches.size(); ++b) {
        if (!in_service[b]) continue;
        const Branch& br = gcase.branches[b];
        const auto k = static_cast<Eigen::Index>(gcase.bus_index(br.from_bus));
        const auto m = static_cast<Eigen::Index>(gcase.bus_index(br.to_bus));
        const Complex y_series = 1.0 / Complex(br.r, br.x);
        const Complex y_shunt(0.0, br.b_charging / 2.0);
        ybus(k, k) += y_series + y_shunt;
        ybus(m, m) += y_series + y_shunt;
        ybus(k, m) -= y_series;
        ybus(m, k) -= y_series;
    }
    for (std::size_t i = 0; i < gcase.buses.size(); ++i) {
        ybus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
            Complex(gcase.buses[i].g_shunt, gcase.buses[i].b_shunt);
    }
    return ybus;
}

ComplexMatrix build_ybus(const GridCase& gcase) { return build_ybus(gcase, service_mask(gcase)); }

std::vector<std::pair<double, double>> branch_flows(const GridCase& gcase,
                                                    const std::vector<double>& v_mag,
                                                    const std::vector<double>& v_ang,
                                                    const std::vector<bool>& in_service) {
    if (v_mag.size() != gcase.bus_count() || v_ang.size() != gcase.bus_count()) {
        throw ValidationError("voltage vectors do not cover all buses");
    }
    if (in_service.size() != gcase.branches.size()) {
        throw ValidationError("in-service mask length does not match branch count");
    }
    std::vector<std::pair<double, double>> flows(gcase.branches.size(), {0.0, 0.0});
    for (std::size_t b = 0; b < gcase.branches.size(); ++b) {
        if (!in_service[b]) continue;
        const Branch& br = gcase.branches[b];
        const std::size_t k = gcase.bus_index(br.from_bus);
        const std::size_t m = gcase.bus_index(br.to_bus);
        const Complex vk = std::polar(v_mag[k], v_ang[k]);
        const Complex vm = std::polar(v_mag[m], v_ang[m]);
        const Complex y_series = 1.0 / Complex(br.r, br.x);
        const Complex y_shunt(0.0, br.b_charging / 2.0);
        const Complex i_from = (vk - vm) * y_series + vk * y_shunt;
        const Complex s_from = vk * std::conj(i_from);
        flows[b] = {s_from.real(), s_from.imag()};
    }
    return flows;
}

}  // namespace tsa::grid
