#include "tsa/grid/types.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tsa/common.hpp"

namespace tsa::grid {

std::size_t GridCase::bus_index(int bus_id) const {
    for (std::size_t i = 0; i < buses.size(); ++i) {
        if (buses[i].id == bus_id) return i;
    }
    throw ValidationError("unknown bus id " + std::to_string(bus_id));
}

std::size_t GridCase::slack_index() const {
    for (std::size_t i = 0; i < buses.size(); ++i) {
        if (buses[i].kind == BusKind::Slack) return i;
    }
    throw ValidationError("case has no slack bus");
}

void GridCase::validate() const {
    if (buses.empty()) throw ValidationError("case has no buses");
    if (system_mva_base <= 0.0) throw ValidationError("system mva_base must be positive");

    std::unordered_set<int> seen;
    int slack_count = 0;
    for (const auto& bus : buses) {
        if (!seen.insert(bus.id).second) {
            throw ValidationError("duplicate bus id " + std::to_string(bus.id));
        }
        if (bus.kind == BusKind::Slack) ++slack_count;
        if (bus.kind != BusKind::PQ && bus.v_setpoint <= 0.0) {
            throw ValidationError("bus " + std::to_string(bus.id) + " has non-positive v_setpoint");
        }
    }
    if (slack_count == 0) throw ValidationError("case has no slack bus");
    if (slack_count > 1) throw ValidationError("case has more than one slack bus");

    for (const auto& br : branches) {
        if (br.x == 0.0) {
            throw ValidationError("branch " + std::to_string(br.index) + " has zero reactance");
        }
        if (br.from_bus == br.to_bus) {
            throw ValidationError("branch " + std::to_string(br.index) + " connects a bus to itself");
        }
        if (!seen.count(br.from_bus) || !seen.count(br.to_bus)) {
            throw ValidationError("branch " + std::to_string(br.index) + " references an unknown bus");
        }
    }

    for (const auto& gen : generators) {
        if (!seen.count(gen.bus)) {
            throw ValidationError("generator references unknown bus " + std::to_string(gen.bus));
        }
        if (gen.inertia_h <= 0.0) {
            throw ValidationError("generator at bus " + std::to_string(gen.bus) + " has non-positive inertia");
        }
        if (gen.xd_prime <= 0.0) {
            throw ValidationError("generator at bus " + std::to_string(gen.bus) + " has non-positive xd_prime");
        }
    }
    std::unordered_set<int> gen_buses;
    for (const auto& gen : generators) {
        if (!gen_buses.insert(gen.bus).second) {
            throw ValidationError("more than one generator at bus " + std::to_string(gen.bus));
        }
    }

    // Connectivity with every branch in service.
    std::unordered_map<int, std::vector<int>> adjacency;
    for (const auto& br : branches) {
        adjacency[br.from_bus].push_back(br.to_bus);
        adjacency[br.to_bus].push_back(br.from_bus);
    }
    std::unordered_set<int> visited;
    std::queue<int> frontier;
    frontier.push(buses.front().id);
    visited.insert(buses.front().id);
    while (!frontier.empty()) {
        const int here = frontier.front();
        frontier.pop();
        for (int next : adjacency[here]) {
            if (visited.insert(next).second) frontier.push(next);
        }
    }
    if (visited.size() != buses.size()) {
        throw ValidationError("network is not connected with all branches in service");
    }
}

std::string case_digest(const GridCase& gcase) {
    std::ostringstream canon;
    canon << "mva_base=" << format_g17(gcase.system_mva_base) << '\n';
    for (const auto& b : gcase.buses) {
        canon << "bus " << b.id << ' ' << static_cast<int>(b.kind) << ' ' << format_g17(b.p_load)
              << ' ' << format_g17(b.q_load) << ' ' << format_g17(b.g_shunt) << ' '
              << format_g17(b.b_shunt) << ' ' << format_g17(b.v_setpoint) << '\n';
    }
    for (const auto& br : gcase.branches) {
        canon << "branch " << br.from_bus << ' ' << br.to_bus << ' ' << format_g17(br.r) << ' '
              << format_g17(br.x) << ' ' << format_g17(br.b_charging) << ' '
              << (br.status == BranchStatus::InService ? 1 : 0) << '\n';
    }
    for (const auto& g : gcase.generators) {
        canon << "gen " << g.bus << ' ' << format_g17(g.p_gen) << ' ' << format_g17(g.v_setpoint)
              << ' ' << format_g17(g.inertia_h) << ' ' << format_g17(g.damping_d) << ' '
              << format_g17(g.xd_prime) << ' ' << format_g17(g.mva_base) << '\n';
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%08x", crc32_of(canon.str()));
    return buf;
}

}  // namespace tsa::grid
