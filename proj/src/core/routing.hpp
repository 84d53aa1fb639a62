#pragma once

#include <vector>

#include "core/cost.hpp"

namespace sagsim {

// Relaxed routing vector: per device a probability simplex over its
// destinations (serving UAV, each relay UAV, each satellite). Devices that
// cannot offload keep frozen slots.
struct RoutingLayout {
    struct DeviceSlots {
        int offset = 0;
        int count = 0;
        int w_slot = -1;                            // local/among-UAV slot (serving UAV)
        std::vector<std::pair<int, int>> relays;    // (slot, uav id)
        std::vector<std::pair<int, int>> sats;      // (slot, sat id)
        bool frozen = false;
    };
    std::vector<DeviceSlots> dev;
    int dim = 0;
    bool allow_relays = true;
};

RoutingLayout build_routing_layout(const Scenario& s, bool allow_relays);

// Smooth relaxed objective and delay evaluator over the routing vector; all
// non-routing blocks are frozen at the given decisions.
struct RelaxedCost {
    const Scenario* s = nullptr;
    RoutingLayout layout;

    // frozen data
    std::vector<double> bits, load_cycles, l_tx, e_const_j;
    std::vector<int> cell;
    std::vector<double> rate_uav;  // [k][k2]
    std::vector<double> rate_sat;  // [k][s]
    std::vector<double> prop;      // [k][s]
    std::vector<double> f_max, kappa, relay_power;
    int K = 0, S = 0;
    double const_energy = 0.0;  // local + uplink part, routing-independent

    double node_workload(const std::vector<double>& x, int n) const;
    double q(const std::vector<double>& x) const;
    void q_grad(const std::vector<double>& x, std::vector<double>& g) const;
    double delay(int j, const std::vector<double>& x) const;
    void delay_grad(int j, const std::vector<double>& x, std::vector<double>& g) const;

    std::vector<double> from_routes(const std::vector<Route>& routes) const;
};

RelaxedCost build_relaxed_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                               bool allow_relays);

// Q(block; others at anchor) + (mu/2) ||block - anchor_block||^2, the
// proximal upper bound each block update minimizes.
enum class RoutingBlock { W, V, Z };
double proximal_objective(const RelaxedCost& rc, const std::vector<double>& x,
                          const std::vector<double>& anchor, RoutingBlock block, double mu);

// One proximal block update from the anchor; returns the anchor itself if no
// descent was found (the update is then a no-op, which preserves descent).
std::vector<double> block_update(const RelaxedCost& rc, RoutingBlock block,
                                 const std::vector<double>& anchor, double mu);

struct RoundRepairResult {
    std::vector<Route> routes;
    bool feasible = true;
    std::vector<int> infeasible_devices;
    int repairs = 0;
};

// Integral recovery: per-device argmax mass (ties: local, then lowest-id
// relay, then lowest-id satellite), then greedy rerouting of deadline
// violators to their delay-minimal destination.
RoundRepairResult round_and_repair(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                   const RelaxedCost& rc, const std::vector<double>& relaxed);

struct BsumResult {
    std::vector<Route> routes;
    std::vector<double> relaxed;
    std::vector<double> q_trace;  // relaxed Q after every block update
    int outer_iters = 0;
    bool converged = false;
    bool feasible = true;
    std::vector<int> infeasible_devices;
    int repairs = 0;
};

BsumResult solve_uav_offload(const Scenario& s, const Decisions& dec, double eps3, int max_iter,
                             double mu, bool allow_relays);

}  // namespace sagsim
