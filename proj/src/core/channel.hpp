#pragma once

#include <vector>

#include "core/decisions.hpp"
#include "core/scenario.hpp"

namespace sagsim {

// Slant distance device -> UAV: horizontal offset plus hover altitude.
double distance_device_uav(const Vec2& device_pos, const Vec2& uav_pos, double altitude_m);
double distance_device_uav(const Device& d, const Uav& u);

double distance_uav_uav(const Vec2& a, double alt_a, const Vec2& b, double alt_b);
double distance_uav_sat(const Vec2& uav_pos, double uav_alt, const Satellite& sat);

// THz access gain g0 d^-2 exp(-i_b d). Throws on d <= 0.
double thz_gain(double d_m, const PhysConfig& phys, int band = 0);

// mmWave backhaul: SNR per the Friis-style budget, then Shannon capacity.
double backhaul_gamma(double tx_power_w, double d_m, double bandwidth_hz, const PhysConfig& phys);
double backhaul_rate(double tx_power_w, double d_m, double bandwidth_hz, const PhysConfig& phys);

// Cached per-iteration channel state. Rebuilt whenever positions, the band
// assignment, or powers change; all entries derive from (scenario, decisions).
struct LinkTable {
    int J = 0, K = 0, B = 0, S = 0;
    std::vector<double> gain;          // [j][k][b]
    std::vector<double> interference;  // [j][k][b], received at UAV k on band b, excluding j
    std::vector<double> sinr;          // [j][k][b]
    std::vector<double> access_rate;   // [j], bit/s on the assigned band (0 if none)
    std::vector<double> backhaul_rate_uav;  // [k][k'], 0 on the diagonal
    std::vector<double> backhaul_rate_sat;  // [k][s]

    double g(int j, int k, int b) const { return gain[(j * K + k) * B + b]; }
    double itf(int j, int k, int b) const { return interference[(j * K + k) * B + b]; }
    double snr(int j, int k, int b) const { return sinr[(j * K + k) * B + b]; }
    double rate_uav(int k, int k2) const { return backhaul_rate_uav[k * K + k2]; }
    double rate_sat(int k, int s) const { return backhaul_rate_sat[k * S + s]; }
};

LinkTable build_link_table(const Scenario& s, const Decisions& dec);

// Standalone forms of the cached quantities (the table is built from these).
double interference_at(const Scenario& s, const Decisions& dec, int j, int k, int b);
double sinr_of(const Scenario& s, const Decisions& dec, int j, int k, int b);
double access_rate_of(const Scenario& s, const Decisions& dec, int j);

}  // namespace sagsim
