#include "core/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sagsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DelayEnergy local_cost(const Device& d, double beta) {
    const double bits = d.task.data_bits - beta;
    if (bits <= 0.0) return {0.0, 0.0};
    const double delay = bits * d.task.cycles_per_bit / d.cpu_hz;
    const double energy = d.chip_coeff * d.cpu_hz * d.cpu_hz * d.task.cycles_per_bit * bits;
    return {delay, energy};
}

DelayEnergy tx_cost(double beta, double rate_bps, double power_w) {
    if (beta <= 0.0) return {0.0, 0.0};
    if (rate_bps <= 0.0) return {kInf, kInf};
    const double delay = beta / rate_bps;
    return {delay, delay * power_w};
}

ExecNode executing_node(const Decisions& dec, int serving_uav, int j) {
    switch (dec.route[j].kind) {
        case RouteKind::AtServing: return {false, serving_uav};
        case RouteKind::Relay: return {false, dec.route[j].target};
        case RouteKind::Satellite: return {true, dec.route[j].target};
    }
    return {false, serving_uav};
}

double relay_flow_bits(const Scenario& s, const Decisions& dec, int k, int k2) {
    double flow = 0.0;
    for (size_t j = 0; j < s.devices.size(); ++j)
        if (s.association[j] == k && dec.v(static_cast<int>(j), k2)) flow += dec.beta[j];
    return flow;
}

double sat_flow_bits(const Scenario& s, const Decisions& dec, int k, int sat) {
    double flow = 0.0;
    for (size_t j = 0; j < s.devices.size(); ++j)
        if (s.association[j] == k && dec.z(static_cast<int>(j), sat)) flow += dec.beta[j];
    return flow;
}

DelayEnergy relay_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int k, int k2) {
    const double flow = relay_flow_bits(s, dec, k, k2);
    if (flow <= 0.0) return {0.0, 0.0};
    const double rate = lt.rate_uav(k, k2);
    if (rate <= 0.0) return {kInf, kInf};
    const double delay = flow / rate;
    return {delay, s.uavs[k].tx_power_w * delay};
}

DelayEnergy sat_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int k, int sat) {
    const double flow = sat_flow_bits(s, dec, k, sat);
    if (flow <= 0.0) return {0.0, 0.0};
    const double rate = lt.rate_sat(k, sat);
    if (rate <= 0.0) return {kInf, kInf};
    const double delay = flow / rate;
    return {delay, s.uavs[k].tx_power_w * delay};
}

double sat_prop_delay_s(const Scenario& s, const Decisions& dec, int k, int sat) {
    const double d = distance_uav_sat(dec.uav_pos[k], s.uavs[k].altitude_m, s.satellites[sat]);
    return 2.0 * d / s.phys.light_speed;
}

double node_workload_cycles(const Scenario& s, const Decisions& dec, int node) {
    double w = 0.0;
    for (size_t j = 0; j < s.devices.size(); ++j) {
        if (dec.beta[j] <= 0.0) continue;
        const ExecNode n = executing_node(dec, s.association[j], static_cast<int>(j));
        if (!n.is_sat && n.id == node) w += s.devices[j].task.cycles_per_bit * dec.beta[j];
    }
    return w;
}

std::vector<std::pair<int, double>> cpu_share(const Scenario& s, const Decisions& dec, int node) {
    std::vector<std::pair<int, double>> shares;
    const double total = node_workload_cycles(s, dec, node);
    if (total <= 0.0) return shares;
    for (size_t j = 0; j < s.devices.size(); ++j) {
        if (dec.beta[j] <= 0.0) continue;
        const ExecNode n = executing_node(dec, s.association[j], static_cast<int>(j));
        if (!n.is_sat && n.id == node) {
            const double load = s.devices[j].task.cycles_per_bit * dec.beta[j];
            shares.emplace_back(static_cast<int>(j), load / total * s.uavs[node].cpu_hz);
        }
    }
    return shares;
}

double cpu_share_of(const Scenario& s, const Decisions& dec, int j) {
    if (dec.beta[j] <= 0.0) return 0.0;
    const ExecNode n = executing_node(dec, s.association[j], j);
    if (n.is_sat) return 0.0;
    const double total = node_workload_cycles(s, dec, n.id);
    if (total <= 0.0) return 0.0;
    return s.devices[j].task.cycles_per_bit * dec.beta[j] / total * s.uavs[n.id].cpu_hz;
}

RemoteCost remote_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int j) {
    RemoteCost out;
    const double beta = dec.beta[j];
    if (beta <= 0.0) return out;
    const int k = s.association[j];
    const DelayEnergy tx = tx_cost(beta, lt.access_rate[j], dec.power[j]);
    double delay = tx.delay_s;

    const ExecNode n = executing_node(dec, k, j);
    if (n.is_sat) {
        const DelayEnergy hop = sat_cost(s, dec, lt, k, n.id);
        delay += hop.delay_s + sat_prop_delay_s(s, dec, k, n.id);
        // satellite compute time is negligible and its energy is not metered
    } else {
        if (n.id != k) {
            const DelayEnergy hop = relay_cost(s, dec, lt, k, n.id);
            delay += hop.delay_s;
        }
        const double share = cpu_share_of(s, dec, j);
        const double cycles = s.devices[j].task.cycles_per_bit * beta;
        if (share > 0.0) {
            delay += cycles / share;
            out.comp_energy_j = s.uavs[n.id].chip_coeff * share * share * cycles;
        } else {
            delay = kInf;
        }
    }
    out.delay_s = delay;
    return out;
}

namespace {

struct Checker {
    std::vector<std::string> violations;
    double max_violation = 0.0;

    void check(double amount, double scale, const std::string& what) {
        const double tol = 1e-9 * std::max(scale, 1e-30);
        if (amount > tol) {
            max_violation = std::max(max_violation, amount);
            violations.push_back(what);
        }
    }
};

std::string dev_tag(int j) {
    std::ostringstream os;
    os << "device " << j;
    return os.str();
}

}  // namespace

CostReport objective(const Scenario& s, const Decisions& dec) {
    return objective(s, dec, build_link_table(s, dec));
}

CostReport objective(const Scenario& s, const Decisions& dec, const LinkTable& lt) {
    const int J = static_cast<int>(s.devices.size());
    const int K = static_cast<int>(s.uavs.size());
    const int S = static_cast<int>(s.satellites.size());

    CostReport r;
    r.local_delay_s.resize(J);
    r.local_energy_j.resize(J);
    r.tx_delay_s.resize(J);
    r.tx_energy_j.resize(J);
    r.remote_delay_s.resize(J);
    r.uav_comp_energy_j.assign(K, 0.0);
    r.uav_relay_energy_j.assign(K, 0.0);
    r.uav_sat_energy_j.assign(K, 0.0);
    r.uav_total_energy_j.assign(K, 0.0);

    Checker chk;

    for (int j = 0; j < J; ++j) {
        const Device& d = s.devices[j];
        const DelayEnergy loc = local_cost(d, dec.beta[j]);
        r.local_delay_s[j] = loc.delay_s;
        r.local_energy_j[j] = loc.energy_j;
        const DelayEnergy tx = tx_cost(dec.beta[j], lt.access_rate[j], dec.power[j]);
        r.tx_delay_s[j] = tx.delay_s;
        r.tx_energy_j[j] = tx.energy_j;
        const RemoteCost rem = remote_cost(s, dec, lt, j);
        r.remote_delay_s[j] = rem.delay_s;
        const ExecNode n = executing_node(dec, s.association[j], j);
        if (!n.is_sat) r.uav_comp_energy_j[n.id] += rem.comp_energy_j;

        const double phi = d.task.deadline_s;
        chk.check(loc.delay_s - phi, phi, dev_tag(j) + ": local delay exceeds deadline (31b)");
        chk.check(rem.delay_s - phi, phi, dev_tag(j) + ": remote delay exceeds deadline (31c)");
        chk.check(-dec.beta[j], d.task.data_bits, dev_tag(j) + ": negative offload split (31d)");
        chk.check(dec.beta[j] - d.task.data_bits, d.task.data_bits,
                  dev_tag(j) + ": offload split exceeds task size (31d)");
        chk.check(-dec.power[j], d.max_tx_power_w, dev_tag(j) + ": negative transmit power (31g)");
        chk.check(dec.power[j] - d.max_tx_power_w, d.max_tx_power_w,
                  dev_tag(j) + ": transmit power above maximum (31g)");
        if (dec.band[j] >= s.phys.num_subbands)
            chk.check(1.0, 1.0, dev_tag(j) + ": band id out of range (31e)");
        if (dec.route[j].kind == RouteKind::Relay) {
            const int t = dec.route[j].target;
            if (t < 0 || t >= K || t == s.association[j])
                chk.check(1.0, 1.0, dev_tag(j) + ": invalid relay target (31k)");
        }
        if (dec.route[j].kind == RouteKind::Satellite) {
            const int t = dec.route[j].target;
            if (t < 0 || t >= S) chk.check(1.0, 1.0, dev_tag(j) + ": invalid satellite target (31l)");
        }
    }

    // (31e): a band is held by at most one device per cell
    for (int k = 0; k < K; ++k) {
        std::vector<int> held(s.phys.num_subbands, 0);
        for (int j = 0; j < J; ++j) {
            if (s.association[j] != k || dec.band[j] < 0) continue;
            if (dec.band[j] < s.phys.num_subbands && ++held[dec.band[j]] > 1) {
                std::ostringstream os;
                os << "cell " << k << ": sub-band " << dec.band[j] << " assigned twice (31e)";
                chk.check(1.0, 1.0, os.str());
            }
        }
    }

    // (31m)-(31n): positions within the per-UAV box
    for (int k = 0; k < K; ++k) {
        const Box& b = s.uavs[k].bounds;
        const double span = std::max(b.x_max - b.x_min, b.y_max - b.y_min);
        std::ostringstream os;
        os << "uav " << k << ": position outside bounds (31m/31n)";
        const double out = std::max({b.x_min - dec.uav_pos[k].x, dec.uav_pos[k].x - b.x_max,
                                     b.y_min - dec.uav_pos[k].y, dec.uav_pos[k].y - b.y_max});
        chk.check(out, std::max(span, 1.0), os.str());
    }

    for (int k = 0; k < K; ++k) {
        for (int k2 = 0; k2 < K; ++k2) {
            if (k2 == k) continue;
            r.uav_relay_energy_j[k] += relay_cost(s, dec, lt, k, k2).energy_j;
        }
        for (int si = 0; si < S; ++si) r.uav_sat_energy_j[k] += sat_cost(s, dec, lt, k, si).energy_j;
        r.uav_total_energy_j[k] =
            r.uav_comp_energy_j[k] + r.uav_relay_energy_j[k] + r.uav_sat_energy_j[k];
    }

    double device_total = 0.0;
    for (int j = 0; j < J; ++j) device_total += r.local_energy_j[j] + r.tx_energy_j[j];
    double uav_total = 0.0;
    for (int k = 0; k < K; ++k) uav_total += r.uav_total_energy_j[k];

    r.device_energy_j = device_total;
    r.uav_energy_j = uav_total;
    r.objective_q_j = device_total + uav_total;
    r.violations = std::move(chk.violations);
    r.max_violation = chk.max_violation;
    r.feasible = r.violations.empty();
    return r;
}

}  // namespace sagsim
