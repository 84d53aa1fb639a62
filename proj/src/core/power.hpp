#pragma once

#include <string>
#include <vector>

#include "core/cost.hpp"

namespace sagsim {

// Per-band power-control context: the devices actively transmitting on one
// sub-band (at most one per cell), their cross gains toward each receiving
// UAV, and the transmit-delay budget left by the non-uplink legs of each
// device's current route. Bands do not couple, so the convexified problems
// are solved band by band.
struct PowerModel {
    int band = -1;
    std::vector<int> devices;          // global ids, active on this band
    std::vector<double> pmax;
    std::vector<double> beta;
    std::vector<double> req_log;       // required log2(1+SINR): beta/(omega*budget), with margin
    std::vector<std::vector<double>> a;  // a[j][i]: gain of transmitter i toward j's UAV
    double noise = 0.0;
    double omega = 0.0;

    int size() const { return static_cast<int>(devices.size()); }

    // signal-plus-interference-plus-noise total at j's UAV
    double total_rx(int j, const std::vector<double>& p) const;
    double interference(int j, const std::vector<double>& p) const;
    double rate_log(int j, const std::vector<double>& p) const;  // log2(1+SINR)

    // true transmission energy of device j and its gradient in the band vars
    double energy(int j, const std::vector<double>& p) const;
    void energy_grad(int j, const std::vector<double>& p, std::vector<double>& out) const;
    double total_energy(const std::vector<double>& p) const;
    void total_energy_grad(const std::vector<double>& p, std::vector<double>& out) const;

    // DC split of the delay constraint: rhat - u <= 0 is equivalent to the
    // original rate requirement.
    double rhat(int j, const std::vector<double>& p) const;
    void rhat_grad(int j, const std::vector<double>& p, std::vector<double>& out) const;
    double u(int j, const std::vector<double>& p) const;
    void u_grad(int j, const std::vector<double>& p, std::vector<double>& out) const;
    double constraint_true(int j, const std::vector<double>& p) const;  // rhat - u
};

// Builds the model of one band from the current decisions. The delay budget
// of each device is its deadline minus the frozen non-uplink legs (compute,
// backhaul aggregates, propagation), shaved by a small margin so downstream
// subproblems keep a strict interior.
struct PowerModelSet {
    std::vector<PowerModel> bands;           // only bands with active devices
    std::vector<int> devices_without_budget; // deadline already spent off-uplink
};
PowerModelSet build_power_models(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                 double feasibility_margin = 1e-3);

struct CcpTraceEntry {
    double surrogate = 0.0;       // linearized objective value after the iteration's solve
    double true_energy = 0.0;     // actual sum of transmission energies at the iterate
    double max_violation = 0.0;   // worst true constraint value (<= 0 when feasible)
};

struct CcpResult {
    std::vector<double> power;  // full per-device vector; untouched devices keep their value
    bool feasible_start = true;
    bool converged = false;
    int iterations = 0;
    std::vector<CcpTraceEntry> trace;
    std::vector<int> binding_devices;  // diagnostic when no feasible start exists
    std::string message;
};

CcpResult solve_power(const Scenario& s, const Decisions& dec, double eps1, int max_iter);
CcpResult solve_power(const Scenario& s, const Decisions& dec, const LinkTable& lt, double eps1,
                      int max_iter);

}  // namespace sagsim
