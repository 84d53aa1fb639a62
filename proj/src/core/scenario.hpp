#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/constants.hpp"

namespace sagsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Box {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
};

// Task tuple T_j = {deadline, cycles/bit, bits}.
struct Task {
    double deadline_s = 0.0;
    double cycles_per_bit = 0.0;
    double data_bits = 0.0;
};

struct Device {
    int id = 0;
    Vec2 pos;
    double cpu_hz = 0.0;
    double chip_coeff = 0.0;      // J s^2 / cycle^3
    double max_tx_power_w = 0.0;
    Task task;
};

struct Uav {
    int id = 0;
    Vec2 pos;                // horizontal coordinates, the deployment variable
    double altitude_m = 0.0; // fixed
    double cpu_hz = 0.0;     // F_k^max
    double chip_coeff = 0.0;
    double tx_power_w = 0.0; // backhaul transmit power
    Box bounds;
};

struct Satellite {
    int id = 0;
    double x = 0.0, y = 0.0;
    double altitude_m = 0.0;
};

// Everything a run needs, resolved from a preset plus overrides.
struct SimConfig {
    std::string preset = "physical";
    double area_m = 600.0;
    int num_devices = 20;
    int num_uavs = 4;
    int num_satellites = 2;
    std::uint64_t seed = 1;

    double deadline_s = 0.0;
    double data_bits_min = 0.0, data_bits_max = 0.0;
    double cycles_per_bit_min = 0.0, cycles_per_bit_max = 0.0;
    double device_cpu_hz = 0.0, device_chip_coeff = 0.0, device_max_tx_power_w = 0.0;
    double uav_altitude_m = 0.0, uav_cpu_hz = 0.0, uav_chip_coeff = 0.0, uav_tx_power_w = 0.0;
    std::vector<double> sat_altitudes_m;  // resolved to num_satellites entries

    PhysConfig phys;

    // Solver knobs.
    double eps1 = 1e-4, eps2 = 1e-4, eps3 = 1e-4, eps4 = 1e-4;
    double bsum_mu = 1.0;
    int bcd_max_outer = 50;
    int ccp_max_iter = 100;
    int sca_max_iter = 50;
    int bsum_max_iter = 60;
    double trust_region_m = 100.0;
    // Drop the UAV compute-energy term from the per-device split objective
    // (sensitivity knob for the frozen-share linearization).
    bool split_ignore_uav_energy = false;

    // Copies every preset default into an explicit field; callers tweak the
    // result and then generate.
    static SimConfig from_preset(const std::string& preset_name);

    // Fills derived fields (satellite altitudes) and checks ranges. Throws
    // std::invalid_argument on inconsistent values.
    void resolve_and_validate();
};

struct Scenario {
    std::vector<Device> devices;
    std::vector<Uav> uavs;
    std::vector<Satellite> satellites;
    std::vector<int> association;  // device index -> UAV index (the partition J_k)
    PhysConfig phys;
    std::uint64_t seed = 0;
    SimConfig config;

    std::vector<int> cell_members(int uav) const {
        std::vector<int> out;
        for (int j = 0; j < static_cast<int>(devices.size()); ++j)
            if (association[j] == uav) out.push_back(j);
        return out;
    }
};

struct KmeansResult {
    std::vector<int> assignment;
    std::vector<Vec2> centroids;
    std::vector<double> sse_trace;  // within-cluster SSE after each Lloyd pass
    int iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding; ties broken toward the lowest
// centroid id. Throws if k exceeds the number of points.
KmeansResult kmeans(const std::vector<Vec2>& points, int k, std::uint64_t seed);

double kmeans_sse(const std::vector<Vec2>& points, const std::vector<int>& assignment,
                  const std::vector<Vec2>& centroids);

// Deterministic world generation: identical (config, seed) gives an
// identical scenario byte for byte.
Scenario generate_scenario(const SimConfig& config, std::uint64_t seed);
Scenario generate_scenario(const SimConfig& config);  // uses config.seed

void validate_scenario(const Scenario& s);

// JSON round trip (config file syntax; see README for the key list).
SimConfig config_from_json_text(const std::string& text);
SimConfig config_from_file(const std::string& path);
std::string config_to_json_text(const SimConfig& config);

std::string scenario_to_json_text(const Scenario& s);
Scenario scenario_from_json_text(const std::string& text);
void scenario_to_file(const Scenario& s, const std::string& path);
Scenario scenario_from_file(const std::string& path);

}  // namespace sagsim
