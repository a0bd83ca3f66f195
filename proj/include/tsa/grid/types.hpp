#pragma once

#include <string>
#include <vector>

namespace tsa::grid {

enum class BusKind { Slack, PV, PQ };

enum class BranchStatus { InService, Out };

struct Bus {
    int id = 0;  // case numbering, 1-based, unique
    BusKind kind = BusKind::PQ;
    double p_load = 0.0;   // p.u. on system MVA base
    double q_load = 0.0;   // p.u.
    double g_shunt = 0.0;  // p.u.
    double b_shunt = 0.0;  // p.u.
    double v_setpoint = 1.0;  // p.u., meaningful for PV/Slack
};

struct Branch {
    int index = 0;  // dense 0-based position in case order; feature columns depend on it
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;
    double x = 0.0;
    double b_charging = 0.0;  // total line charging, p.u.
    BranchStatus status = BranchStatus::InService;
};

struct Generator {
    int bus = 0;
    double p_gen = 0.0;       // p.u. on system base
    double v_setpoint = 1.0;  // p.u.
    double inertia_h = 0.0;   // s, on machine MVA base
    double damping_d = 0.0;   // p.u. on machine base
    double xd_prime = 0.0;    // p.u. transient reactance on machine base
    double mva_base = 100.0;  // MVA
};

struct GridCase {
    double system_mva_base = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;

    std::size_t bus_count() const { return buses.size(); }
    std::size_t branch_count() const { return branches.size(); }

    /// Dense position of a bus id in case order; throws ValidationError for
    /// unknown ids.
    std::size_t bus_index(int bus_id) const;

    /// Position of the single slack bus.
    std::size_t slack_index() const;

    /// Checks all structural invariants (unique ids, one slack, endpoints
    /// exist, connectivity with all branches in service, positive reactances).
    /// Throws ValidationError on the first violation.
    void validate() const;
};

struct LoadingScenario {
    std::vector<double> load_factors;  // per bus, each in [0.7, 1.3]
    double gen_scale = 1.0;            // applied to every p_gen
};

struct PowerFlowSolution {
    std::vector<double> v_mag;  // p.u., case bus order
    std::vector<double> v_ang;  // rad, slack at 0
    std::vector<double> p_inj;  // net injection, p.u.
    std::vector<double> q_inj;
    bool converged = false;
    int iterations = 0;
    double max_mismatch = 0.0;
};

/// CRC-32 over a canonical rendering of the case, used to tie datasets and
/// reports to the exact network that produced them.
std::string case_digest(const GridCase& gcase);

}  // namespace tsa::grid
