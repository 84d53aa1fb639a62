#include "core/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace sagsim {

double to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

Preset make_paper_table() {
    Preset p;
    p.name = "paper-table";
    p.phys.num_subbands = 25;
    p.phys.subband_hz = 5e2;
    p.phys.ref_gain = to_linear(-20.0);
    p.phys.absorption = 0.005;
    p.phys.noise_w = dbm_to_watts(-174.0);
    p.phys.mm_carrier_hz = 28e9;
    p.phys.mm_bandwidth_uav_hz = 1.7e6;
    p.phys.mm_bandwidth_sat_hz = 1.8e6;
    p.phys.antenna_gain_tx = to_linear(41.0);
    p.phys.antenna_gain_rx = to_linear(41.0);
    p.phys.amp_factor = to_linear(-23.0);
    // The table labels the 300 K entry "H", but the text defines H as
    // Boltzmann's constant and t_n as the noise temperature; the preset
    // assigns the kelvins to t_n.
    p.phys.noise_temp_k = 300.0;
    p.phys.boltzmann = 1.380649e-23;
    p.phys.light_speed = 3e8;
    p.phys.match_weight = 1.0;
    p.phys.interference_weight = 1e-2;

    p.device_cpu_hz = 0.01e6;
    p.device_chip_coeff = 1e-10;
    p.device_max_tx_power_w = dbm_to_watts(23.0);
    p.deadline_s = 0.5;

    p.uav_altitude_m = 50.0;
    p.uav_cpu_hz = 3.5e6;
    p.uav_chip_coeff = 1e-10;
    p.uav_tx_power_w = dbm_to_watts(30.0);
    return p;
}

Preset make_physical() {
    Preset p = make_paper_table();
    p.name = "physical";
    p.phys.subband_hz = 5e6;
    p.device_cpu_hz = 1e9;
    p.device_chip_coeff = 1e-28;
    p.uav_cpu_hz = 3.5e9;
    p.uav_chip_coeff = 1e-28;
    return p;
}

}  // namespace

const Preset& preset_paper_table() {
    static const Preset p = make_paper_table();
    return p;
}

const Preset& preset_physical() {
    static const Preset p = make_physical();
    return p;
}

const Preset& preset_by_name(const std::string& name) {
    if (name == "paper-table") return preset_paper_table();
    if (name == "physical") return preset_physical();
    throw std::invalid_argument("unknown preset '" + name + "' (expected 'paper-table' or 'physical')");
}

}  // namespace sagsim
