#pragma once

#include <string>
#include <vector>

#include "core/channel.hpp"
#include "core/decisions.hpp"
#include "core/scenario.hpp"

namespace sagsim {

struct DelayEnergy {
    double delay_s = 0.0;
    double energy_j = 0.0;
};

// Local compute of the retained (A - beta) bits.
DelayEnergy local_cost(const Device& d, double beta);

// Uplink of the offloaded beta bits. beta > 0 with no rate yields an
// infinite-delay sentinel (infeasibility is data here, not an exception).
DelayEnergy tx_cost(double beta, double rate_bps, double power_w);

struct ExecNode {
    bool is_sat = false;
    int id = 0;  // UAV id or satellite id
};
ExecNode executing_node(const Decisions& dec, int serving_uav, int j);

// Aggregate flow over a backhaul edge (bits of every device routed over it).
double relay_flow_bits(const Scenario& s, const Decisions& dec, int k, int k2);
double sat_flow_bits(const Scenario& s, const Decisions& dec, int k, int sat);

DelayEnergy relay_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int k, int k2);
DelayEnergy sat_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int k, int sat);

// Round-trip propagation UAV k -> satellite, 2 d / c.
double sat_prop_delay_s(const Scenario& s, const Decisions& dec, int k, int sat);

// Proportional CPU shares at a UAV among the devices executing there with
// beta > 0. Entries are (device, share_hz); empty when nothing runs there.
std::vector<std::pair<int, double>> cpu_share(const Scenario& s, const Decisions& dec, int node);
double node_workload_cycles(const Scenario& s, const Decisions& dec, int node);
double cpu_share_of(const Scenario& s, const Decisions& dec, int j);

struct RemoteCost {
    double delay_s = 0.0;        // full uplink + backhaul + compute (+ propagation) chain
    double comp_energy_j = 0.0;  // energy at the executing UAV (0 for satellites)
};
RemoteCost remote_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt, int j);

struct CostReport {
    std::vector<double> local_delay_s, local_energy_j;
    std::vector<double> tx_delay_s, tx_energy_j;
    std::vector<double> remote_delay_s;
    std::vector<double> uav_comp_energy_j, uav_relay_energy_j, uav_sat_energy_j, uav_total_energy_j;
    double device_energy_j = 0.0;  // sum of local + tx
    double uav_energy_j = 0.0;     // sum of UAV totals
    double objective_q_j = 0.0;
    bool feasible = true;
    std::vector<std::string> violations;
    double max_violation = 0.0;
};

// Assembles the objective and checks every constraint of the joint problem.
// Pure: identical inputs give bit-identical reports.
CostReport objective(const Scenario& s, const Decisions& dec);
CostReport objective(const Scenario& s, const Decisions& dec, const LinkTable& lt);

}  // namespace sagsim
