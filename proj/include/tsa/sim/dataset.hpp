#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsa/common.hpp"
#include "tsa/sim/stage_networks.hpp"

namespace tsa::sim {

struct ScenarioSummary {
    int fault_branch = 0;
    double fault_position = 0.0;
    double clearing_time = 0.0;
};

struct SampleRecord {
    std::vector<double> features;  // length 2a+2b, FeatureLayout order
    double tsi = 0.0;              // in (-1, 1]
    int label = 0;                 // 1 iff tsi > 0
    ScenarioSummary scenario;
    std::int64_t scenario_id = 0;
};

struct Dataset {
    std::size_t feature_count = 0;
    std::vector<std::string> feature_names;
    DataMatrix features;  // n x feature_count
    std::vector<int> labels;
    std::vector<double> tsi;
    std::vector<std::int64_t> scenario_ids;
    std::vector<ScenarioSummary> scenarios;
    std::string case_digest;

    std::size_t size() const { return labels.size(); }
    void append(const SampleRecord& record);
};

struct GenerationOptions {
    double dt = 0.005;          // s
    double sim_horizon = 10.0;  // s
    double clearing_min = 0.1;
    double clearing_max = 0.3;
    double position_min = 0.1;
    double position_max = 0.9;
    double voltage_min = 0.95;  // operating-point screen
    double voltage_max = 1.05;
    int max_redraws = 50;       // loading redraws per scenario
    double max_failure_fraction = 0.2;
    unsigned threads = 1;
    grid::LoadingOptions loading;
    StageOptions stages;
};

struct GenerationLog {
    std::size_t requested = 0;
    std::size_t accepted = 0;
    std::size_t failed = 0;
    std::size_t redraws = 0;  // loading redraws across all scenarios
    std::size_t stable = 0;
    std::size_t unstable = 0;
    std::vector<std::string> failures;  // one message per skipped scenario
};

/// Mass-produces labeled samples: per scenario id, draws a screened loading,
/// a fault branch, position, and clearing time, simulates, and snapshots
/// features at the clearing instant. Deterministic for a fixed seed and
/// independent of thread count. Throws NumericalError when more than
/// max_failure_fraction of scenarios fail.
Dataset generate_dataset(const grid::GridCase& gcase, std::size_t n_scenarios, double dt,
                         std::uint64_t seed, const GenerationOptions& options = {},
                         GenerationLog* log = nullptr);

/// Dataset CSV: header `V_1..,TH_1..,P_1..,Q_1..,label,tsi,scenario_id,
/// fault_branch,fault_pos,clear_time`, reals with 9 significant digits.
void write_dataset_csv(const Dataset& dataset, std::ostream& out);
void write_dataset_csv(const Dataset& dataset, const std::string& path);

/// Parses a dataset CSV; malformed cells raise ParseError naming the row.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

}  // namespace tsa::sim
