#include "core/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sagsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> frozen_shares(const Scenario& s, const Decisions& dec) {
    const int J = static_cast<int>(s.devices.size());
    const int K = static_cast<int>(s.uavs.size());
    std::vector<double> shares(J, 0.0);

    // Hypothetical full-offload workload per UAV node, used for devices whose
    // previous split was zero.
    std::vector<double> pool(K, 0.0);
    for (int j = 0; j < J; ++j) {
        const ExecNode n = executing_node(dec, s.association[j], j);
        if (n.is_sat) continue;
        const double b = dec.beta[j] > 0.0 ? dec.beta[j] : s.devices[j].task.data_bits;
        pool[n.id] += s.devices[j].task.cycles_per_bit * b;
    }
    for (int j = 0; j < J; ++j) {
        const ExecNode n = executing_node(dec, s.association[j], j);
        if (n.is_sat) continue;  // satellite compute time is not modeled
        const double b = dec.beta[j] > 0.0 ? dec.beta[j] : s.devices[j].task.data_bits;
        const double load = s.devices[j].task.cycles_per_bit * b;
        if (pool[n.id] > 0.0) shares[j] = load / pool[n.id] * s.uavs[n.id].cpu_hz;
    }
    return shares;
}

SplitDeviceModel split_device_model(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                    const std::vector<double>& shares, int j) {
    SplitDeviceModel m;
    const Device& d = s.devices[j];
    const int k = s.association[j];
    const double phi = d.task.deadline_s;
    const double A = d.task.data_bits;
    const double alpha = d.task.cycles_per_bit;
    const double R = lt.access_rate[j];

    // (32b): the retained bits must finish locally in time
    m.lo = std::max(0.0, A - d.cpu_hz * phi / alpha);

    // (32c): uplink + (route legs) + compute, all linear in beta at frozen
    // rates/shares/aggregate flows
    double c0 = 0.0;  // constant delay contribution of other devices' flows
    double c1 = 0.0;  // per-bit delay
    double route_marginal_energy = 0.0;
    bool offload_possible = R > 0.0 && dec.band[j] >= 0;
    if (offload_possible) {
        c1 += 1.0 / R;
        const ExecNode n = executing_node(dec, k, j);
        if (n.is_sat) {
            const double rate = lt.rate_sat(k, n.id);
            if (rate <= 0.0) {
                offload_possible = false;
            } else {
                const double others =
                    sat_flow_bits(s, dec, k, n.id) - (dec.z(j, n.id) ? dec.beta[j] : 0.0);
                c1 += 1.0 / rate;
                c0 += std::max(others, 0.0) / rate + sat_prop_delay_s(s, dec, k, n.id);
                route_marginal_energy += s.uavs[k].tx_power_w / rate;
            }
        } else {
            if (n.id != k) {
                const double rate = lt.rate_uav(k, n.id);
                if (rate <= 0.0) {
                    offload_possible = false;
                } else {
                    const double others =
                        relay_flow_bits(s, dec, k, n.id) - (dec.v(j, n.id) ? dec.beta[j] : 0.0);
                    c1 += 1.0 / rate;
                    c0 += std::max(others, 0.0) / rate;
                    route_marginal_energy += s.uavs[k].tx_power_w / rate;
                }
            }
            if (offload_possible) {
                const double share = shares[j];
                if (share <= 0.0) {
                    offload_possible = false;
                } else {
                    c1 += alpha / share;
                    if (!s.config.split_ignore_uav_energy)
                        route_marginal_energy += s.uavs[n.id].chip_coeff * share * share * alpha;
                }
            }
        }
    }

    if (!offload_possible) {
        m.hi = 0.0;
    } else {
        const double budget = phi - c0;
        m.hi = budget <= 0.0 ? 0.0 : std::min(A, budget / c1);
        const double m_local = d.chip_coeff * d.cpu_hz * d.cpu_hz * alpha;
        const double m_tx = dec.power[j] / R;
        m.slope = m_tx + route_marginal_energy - m_local;
    }
    if (!offload_possible) {
        // objective is then just the local term; slope sign keeps beta at 0
        m.slope = 1.0;
    }
    m.feasible = m.hi >= m.lo - 1e-9 * std::max(A, 1.0);
    if (m.feasible) m.hi = std::max(m.hi, m.lo);
    return m;
}

double split_model_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                        const std::vector<double>& shares, const std::vector<double>& beta) {
    double total = 0.0;
    for (size_t j = 0; j < s.devices.size(); ++j) {
        const Device& d = s.devices[j];
        const double m_local = d.chip_coeff * d.cpu_hz * d.cpu_hz * d.task.cycles_per_bit;
        total += m_local * (d.task.data_bits - beta[j]);
        if (beta[j] <= 0.0) continue;
        const SplitDeviceModel m = split_device_model(s, dec, lt, shares, static_cast<int>(j));
        total += (m.slope + m_local) * beta[j];
    }
    return total;
}

SplitOutcome solve_split(const Scenario& s, const Decisions& dec) {
    const LinkTable lt = build_link_table(s, dec);
    return solve_split(s, dec, lt, frozen_shares(s, dec));
}

SplitOutcome solve_split(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                         const std::vector<double>& shares) {
    SplitOutcome out;
    out.beta.resize(s.devices.size());
    for (int j = 0; j < static_cast<int>(s.devices.size()); ++j) {
        const SplitDeviceModel m = split_device_model(s, dec, lt, shares, j);
        if (!m.feasible) {
            out.feasible = false;
            out.infeasible_devices.push_back(j);
            out.beta[j] = std::clamp(dec.beta[j], 0.0, s.devices[j].task.data_bits);
            continue;
        }
        // linear objective over [lo, hi]: optimum at an endpoint, ties toward
        // the smaller split
        out.beta[j] = m.slope < 0.0 ? m.hi : m.lo;
    }
    if (!out.feasible) {
        std::ostringstream os;
        os << "split: deadline unreachable for device";
        if (out.infeasible_devices.size() > 1) os << "s";
        for (int j : out.infeasible_devices) os << " " << j;
        out.message = os.str();
    }
    return out;
}

}  // namespace sagsim
