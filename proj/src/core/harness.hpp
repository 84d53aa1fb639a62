#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bcd.hpp"
#include "core/scenario.hpp"

namespace sagsim {

struct RunRecord {
    std::uint64_t seed = 0;
    std::string variant;
    int devices = 0, uavs = 0, subbands = 0;
    std::string preset;
    double avg_data_bits = 0.0;
    double deadline_s = 0.0;
    double total_energy_j = 0.0;
    double device_energy_j = 0.0;
    double uav_energy_j = 0.0;
    double offload_fraction = 0.0;  // mean beta / A
    double sum_rate_bps = 0.0;      // achievable access rates at the final decisions
    int outer_iters = 0;
    double runtime_s = 0.0;
    bool converged = false;
    bool feasible = false;
};

std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& r);

RunRecord make_run_record(const Scenario& s, Variant variant, const BcdResult& res,
                          double runtime_s);

// Single end-to-end run. When stable_runtime is set the wall-clock fields in
// the CSV row and trace are zeroed so repeated runs are byte-identical.
struct RunOutput {
    RunRecord record;
    BcdResult result;
    std::string trace_json;
};
RunOutput run_once(const SimConfig& config, std::uint64_t seed, Variant variant,
                   bool stable_runtime);

// Writes row CSV, scenario snapshot, and trace into out_dir; returns paths.
struct RunArtifacts {
    RunRecord record;
    std::string csv_path, scenario_path, trace_path;
};
RunArtifacts run_to_dir(const SimConfig& config, std::uint64_t seed, Variant variant,
                        const std::string& out_dir, bool stable_runtime);

// Cartesian sweep over one parameter axis x seeds x variants. Rows are
// ordered (value, seed, variant) regardless of the worker count.
struct SweepRequest {
    SimConfig base;
    std::string param;  // devices | uavs | data_size | deadline
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    std::vector<Variant> variants;
    int jobs = 1;
    bool stable_runtime = false;
};
struct SweepOutput {
    std::vector<RunRecord> rows;
    std::string csv_text;
    std::string summary_csv_text;  // per-(value, variant) mean and 95% CI
    bool infeasible_present = false;
};
SweepOutput sweep(const SweepRequest& req);
SweepOutput sweep_to_dir(const SweepRequest& req, const std::string& out_dir);

// proposed vs exhaustive band assignment and exhaustive routing on seeded
// desk-scale instances; reports the optimality-gap distribution
struct OracleRow {
    std::uint64_t seed = 0;
    double q_proposed = 0.0;
    double q_band_oracle = 0.0;
    double band_gap_rel = 0.0;
    double q_route_oracle = 0.0;
    double route_gap_rel = 0.0;
};
struct OracleReport {
    std::vector<OracleRow> rows;
    std::string csv_text;
    double median_band_gap = 0.0;
    double median_route_gap = 0.0;
};
OracleReport oracle_suite(const SimConfig& base, int num_seeds);
OracleReport oracle_suite_to_dir(const SimConfig& base, int num_seeds, const std::string& out_dir);

// Conditional exhaustive oracles used by the suite (exposed for tests):
// minimum objective over all injective band assignments (or all 3-way
// routings) holding the other blocks at the given decisions.
double exhaustive_band_oracle(const Scenario& s, const Decisions& dec);
double exhaustive_routing_oracle(const Scenario& s, const Decisions& dec, bool allow_relays);

// 95% confidence half-width, 1.96 * stderr with the n-1 sample deviation.
double ci95_halfwidth(const std::vector<double>& xs);

}  // namespace sagsim
