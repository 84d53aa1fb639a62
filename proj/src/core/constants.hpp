#pragma once

#include <string>
#include <vector>

namespace sagsim {

// Unit conversions. Scenario parameter tables mix dB/dBm with the linear
// quantities the rate formulas need, so everything is converted on load.
double to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Physical-layer constants shared by the channel and cost models.
struct PhysConfig {
    int num_subbands = 25;         // B
    double subband_hz = 500.0;     // omega
    double ref_gain = 0.01;        // g0, linear, at d = 1 m
    double absorption = 0.005;     // molecular absorption coefficient, 1/m
    // Optional per-band absorption profile (size num_subbands). Empty means
    // the scalar `absorption` applies to every sub-band.
    std::vector<double> absorption_per_band;
    double noise_w = 3.9810717055349694e-21;  // sigma^2 (-174 dBm)
    double mm_carrier_hz = 28e9;              // f_c of the backhaul links
    double mm_bandwidth_uav_hz = 1.7e6;       // B_mm UAV->UAV
    double mm_bandwidth_sat_hz = 1.8e6;       // B_mm UAV->satellite
    double antenna_gain_tx = 12589.254117941662;  // 41 dB
    double antenna_gain_rx = 12589.254117941662;  // 41 dB
    double amp_factor = 0.005011872336272725;     // L_r, -23 dB
    double noise_temp_k = 300.0;                  // t_n
    double boltzmann = 1.380649e-23;              // H, J/K
    double light_speed = 3e8;                     // c, m/s
    double match_weight = 1.0;                    // Phi_1 in the band preference
    double interference_weight = 1e-2;            // Phi_j^{k',b}, uniform
    // Literal reading of the interference double sum: also count same-cell
    // transmitters sharing the band. Off by default (OFDMA removes them).
    bool literal_interference = false;

    double band_absorption(int band) const {
        if (!absorption_per_band.empty()) return absorption_per_band.at(band);
        return absorption;
    }
};

// A named parameter set: the physical constants plus the per-entity defaults
// a scenario is generated from.
struct Preset {
    std::string name;
    PhysConfig phys;

    double device_cpu_hz = 1e9;
    double device_chip_coeff = 1e-28;     // kappa_j
    double device_max_tx_power_w = 0.19952623149688797;  // 23 dBm
    double deadline_s = 0.5;

    double uav_altitude_m = 50.0;
    double uav_cpu_hz = 3.5e9;
    double uav_chip_coeff = 1e-28;        // kappa
    double uav_tx_power_w = 1.0;          // 30 dBm, UAV->UAV and UAV->satellite

    double data_bits_min = 0.1e6;
    double data_bits_max = 0.5e6;
    double cycles_per_bit_min = 10.0;
    double cycles_per_bit_max = 50.0;

    double sat_altitude_min_m = 780e3;
    double sat_altitude_max_m = 800e3;

    // Stop tolerances of the four iterative solvers.
    double eps1 = 1e-4;  // power control
    double eps2 = 1e-4;  // deployment
    double eps3 = 1e-4;  // routing
    double eps4 = 1e-4;  // outer loop
};

// `paper-table`: the simulation table verbatim, kept for formula-level
// regression only (its magnitudes are not mutually consistent: the device
// CPUs cannot meet any deadline and the sub-bands are 500 Hz wide).
// `physical`: same table with the compute/bandwidth entries replaced by
// self-consistent magnitudes; all trend experiments use it.
const Preset& preset_paper_table();
const Preset& preset_physical();
const Preset& preset_by_name(const std::string& name);

}  // namespace sagsim
