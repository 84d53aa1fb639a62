/*
 * sagsim - energy-minimal task offloading simulator for THz-access,
 * mmWave-backhaul space-air-ground edge networks.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every call returns a status code and leaves a
 * human-readable message for the calling thread in sagsim_last_error() on
 * failure. Strings returned through char** are owned by the caller and must
 * be released with sagsim_string_free().
 */
#ifndef SAGSIM_H
#define SAGSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sagsim_status {
    SAGSIM_OK = 0,
    SAGSIM_ERR_INVALID_ARGUMENT = 1,
    SAGSIM_ERR_IO = 2,
    SAGSIM_ERR_INFEASIBLE = 3, /* run finished but violates a constraint */
    SAGSIM_ERR_INTERNAL = 4
} sagsim_status;

typedef struct sagsim_config sagsim_config;
typedef struct sagsim_scenario sagsim_scenario;
typedef struct sagsim_result sagsim_result;

const char* sagsim_version(void);

/* Message describing the most recent failure on this thread. */
const char* sagsim_last_error(void);

void sagsim_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

sagsim_status sagsim_config_default(const char* preset, sagsim_config** out);
sagsim_status sagsim_config_parse(const char* json_text, sagsim_config** out);
sagsim_status sagsim_config_load(const char* path, sagsim_config** out);
sagsim_status sagsim_config_to_json(const sagsim_config* cfg, char** out_text);
sagsim_status sagsim_config_set_seed(sagsim_config* cfg, uint64_t seed);
/* Validates ranges; on failure the message names the offending key. */
sagsim_status sagsim_config_validate(const sagsim_config* cfg);
void sagsim_config_free(sagsim_config* cfg);

/* ---- scenario ----------------------------------------------------------- */

sagsim_status sagsim_scenario_generate(const sagsim_config* cfg, uint64_t seed,
                                       sagsim_scenario** out);
sagsim_status sagsim_scenario_to_json(const sagsim_scenario* sc, char** out_text);
sagsim_status sagsim_scenario_save(const sagsim_scenario* sc, const char* path);
sagsim_status sagsim_scenario_load(const char* path, sagsim_scenario** out);
void sagsim_scenario_free(sagsim_scenario* sc);

/* ---- single run ---------------------------------------------------------- */

/*
 * Runs one variant on the scenario. Variants: "proposed", "all-local",
 * "no-collaboration", "c-uavs", "ato", "fto", "rsa", "fpa", "optimal".
 * stable_runtime != 0 zeroes wall-clock fields so outputs are byte-stable.
 * Returns SAGSIM_ERR_INFEASIBLE when the run completes infeasible; *out is
 * still populated in that case.
 */
sagsim_status sagsim_run(const sagsim_scenario* sc, const char* variant, int stable_runtime,
                         sagsim_result** out);

/*
 * Metric names: total_energy_j, device_energy_j, uav_energy_j,
 * offload_fraction, sum_rate_bps, outer_iters, runtime_s, converged,
 * feasible, avg_data_bits, deadline_s.
 */
sagsim_status sagsim_result_metric(const sagsim_result* res, const char* name, double* out);
const char* sagsim_result_csv_header(void);
sagsim_status sagsim_result_csv_row(const sagsim_result* res, char** out_text);
sagsim_status sagsim_result_trace_json(const sagsim_result* res, char** out_text);
void sagsim_result_free(sagsim_result* res);

/* ---- batch entry points (the CLI is a thin shell over these) ------------- */

/* Writes run_<variant>_<seed>.csv, scenario_<seed>.json, trace_*.json. */
sagsim_status sagsim_cmd_run(const char* config_path, uint64_t seed, const char* variant,
                             const char* out_dir, int stable_runtime, int* infeasible);

/*
 * Sweep of param in {devices, uavs, data_size, deadline} over values x seeds
 * x variants; writes sweep.csv and summary.csv (mean and 95% CI per point).
 */
sagsim_status sagsim_cmd_sweep(const char* config_path, const char* param, const double* values,
                               int num_values, const uint64_t* seeds, int num_seeds,
                               const char* const* variants, int num_variants, const char* out_dir,
                               int jobs, int stable_runtime, int* infeasible);

/*
 * Exhaustive-search comparison on desk-scale instances (guarded to J <= 6,
 * K <= 2, B <= 6, S <= 1); writes oracle.csv and oracle_report.txt.
 * config_path may be NULL for the built-in desk-scale configuration.
 */
sagsim_status sagsim_cmd_oracle(const char* config_path, int num_seeds, const char* out_dir);

/* Parses and validates a config; the message reports the verdict. */
sagsim_status sagsim_cmd_validate(const char* config_path, char** message);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SAGSIM_H */
