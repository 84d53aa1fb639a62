#include "core/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sagsim {

namespace {
double sq(double v) { return v * v; }
}  // namespace

double distance_device_uav(const Vec2& device_pos, const Vec2& uav_pos, double altitude_m) {
    return std::sqrt(sq(uav_pos.x - device_pos.x) + sq(uav_pos.y - device_pos.y) + sq(altitude_m));
}

double distance_device_uav(const Device& d, const Uav& u) {
    return distance_device_uav(d.pos, u.pos, u.altitude_m);
}

double distance_uav_uav(const Vec2& a, double alt_a, const Vec2& b, double alt_b) {
    return std::sqrt(sq(a.x - b.x) + sq(a.y - b.y) + sq(alt_a - alt_b));
}

double distance_uav_sat(const Vec2& uav_pos, double uav_alt, const Satellite& sat) {
    return std::sqrt(sq(uav_pos.x - sat.x) + sq(uav_pos.y - sat.y) + sq(uav_alt - sat.altitude_m));
}

double thz_gain(double d_m, const PhysConfig& phys, int band) {
    if (d_m <= 0.0) throw std::domain_error("thz_gain: distance must be positive");
    const double i_b = phys.band_absorption(band);
    return phys.ref_gain * std::exp(-i_b * d_m) / (d_m * d_m);
}

double backhaul_gamma(double tx_power_w, double d_m, double bandwidth_hz, const PhysConfig& phys) {
    if (d_m <= 0.0) throw std::domain_error("backhaul_gamma: distance must be positive");
    const double budget = tx_power_w * phys.antenna_gain_tx * phys.antenna_gain_rx * phys.amp_factor /
                          (phys.noise_temp_k * phys.boltzmann * bandwidth_hz);
    const double fspl = sq(phys.light_speed / (4.0 * std::numbers::pi * d_m * phys.mm_carrier_hz));
    return budget * fspl;
}

double backhaul_rate(double tx_power_w, double d_m, double bandwidth_hz, const PhysConfig& phys) {
    const double gamma = backhaul_gamma(tx_power_w, d_m, bandwidth_hz, phys);
    return bandwidth_hz * std::log1p(gamma) / std::numbers::ln2;
}

double interference_at(const Scenario& s, const Decisions& dec, int j, int k, int b) {
    double acc = 0.0;
    const int J = static_cast<int>(s.devices.size());
    for (int j2 = 0; j2 < J; ++j2) {
        if (j2 == j || dec.band[j2] != b || !dec.transmits(j2)) continue;
        const bool same_cell = s.association[j2] == k;
        if (same_cell && !s.phys.literal_interference) continue;
        const double d = distance_device_uav(s.devices[j2].pos, dec.uav_pos[k], s.uavs[k].altitude_m);
        acc += dec.power[j2] * thz_gain(d, s.phys, b);
    }
    return acc;
}

double sinr_of(const Scenario& s, const Decisions& dec, int j, int k, int b) {
    if (dec.power[j] <= 0.0) return 0.0;
    const double d = distance_device_uav(s.devices[j].pos, dec.uav_pos[k], s.uavs[k].altitude_m);
    const double g = thz_gain(d, s.phys, b);
    return dec.power[j] * g / (interference_at(s, dec, j, k, b) + s.phys.noise_w);
}

double access_rate_of(const Scenario& s, const Decisions& dec, int j) {
    const int b = dec.band[j];
    if (b < 0) return 0.0;
    const int k = s.association[j];
    const double gamma = sinr_of(s, dec, j, k, b);
    return s.phys.subband_hz * std::log1p(gamma) / std::numbers::ln2;
}

LinkTable build_link_table(const Scenario& s, const Decisions& dec) {
    LinkTable t;
    t.J = static_cast<int>(s.devices.size());
    t.K = static_cast<int>(s.uavs.size());
    t.B = s.phys.num_subbands;
    t.S = static_cast<int>(s.satellites.size());
    t.gain.assign(static_cast<size_t>(t.J) * t.K * t.B, 0.0);
    t.interference.assign(static_cast<size_t>(t.J) * t.K * t.B, 0.0);
    t.sinr.assign(static_cast<size_t>(t.J) * t.K * t.B, 0.0);
    t.access_rate.assign(t.J, 0.0);

    for (int j = 0; j < t.J; ++j) {
        for (int k = 0; k < t.K; ++k) {
            const double d = distance_device_uav(s.devices[j].pos, dec.uav_pos[k], s.uavs[k].altitude_m);
            for (int b = 0; b < t.B; ++b)
                t.gain[(static_cast<size_t>(j) * t.K + k) * t.B + b] = thz_gain(d, s.phys, b);
        }
    }
    // Interference received at UAV k on band b from transmitters outside its
    // cell (or any transmitter sharing the band under the literal reading);
    // the per-(j,k,b) entry removes j's own term when applicable.
    for (int k = 0; k < t.K; ++k) {
        for (int b = 0; b < t.B; ++b) {
            double total = 0.0;
            for (int j2 = 0; j2 < t.J; ++j2) {
                if (dec.band[j2] != b || !dec.transmits(j2)) continue;
                const bool same_cell = s.association[j2] == k;
                if (same_cell && !s.phys.literal_interference) continue;
                total += dec.power[j2] * t.g(j2, k, b);
            }
            for (int j = 0; j < t.J; ++j) {
                double mine = 0.0;
                const bool counted = dec.band[j] == b && dec.transmits(j) &&
                                     (s.association[j] != k || s.phys.literal_interference);
                if (counted) mine = dec.power[j] * t.g(j, k, b);
                t.interference[(static_cast<size_t>(j) * t.K + k) * t.B + b] = total - mine;
            }
        }
    }
    for (int j = 0; j < t.J; ++j) {
        for (int k = 0; k < t.K; ++k) {
            for (int b = 0; b < t.B; ++b) {
                const size_t idx = (static_cast<size_t>(j) * t.K + k) * t.B + b;
                if (dec.power[j] > 0.0)
                    t.sinr[idx] = dec.power[j] * t.gain[idx] / (t.interference[idx] + s.phys.noise_w);
            }
        }
    }
    for (int j = 0; j < t.J; ++j) {
        const int b = dec.band[j];
        if (b < 0) continue;
        const int k = s.association[j];
        t.access_rate[j] =
            s.phys.subband_hz * std::log1p(t.snr(j, k, b)) / std::numbers::ln2;
    }

    t.backhaul_rate_uav.assign(static_cast<size_t>(t.K) * t.K, 0.0);
    for (int k = 0; k < t.K; ++k) {
        for (int k2 = 0; k2 < t.K; ++k2) {
            if (k == k2) continue;
            const double d = distance_uav_uav(dec.uav_pos[k], s.uavs[k].altitude_m,
                                              dec.uav_pos[k2], s.uavs[k2].altitude_m);
            t.backhaul_rate_uav[k * t.K + k2] =
                backhaul_rate(s.uavs[k].tx_power_w, std::max(d, 1.0), s.phys.mm_bandwidth_uav_hz, s.phys);
        }
    }
    t.backhaul_rate_sat.assign(static_cast<size_t>(t.K) * std::max(t.S, 1), 0.0);
    for (int k = 0; k < t.K; ++k) {
        for (int si = 0; si < t.S; ++si) {
            const double d = distance_uav_sat(dec.uav_pos[k], s.uavs[k].altitude_m, s.satellites[si]);
            t.backhaul_rate_sat[k * t.S + si] =
                backhaul_rate(s.uavs[k].tx_power_w, d, s.phys.mm_bandwidth_sat_hz, s.phys);
        }
    }
    return t;
}

}  // namespace sagsim
