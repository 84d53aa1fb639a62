#pragma once

#include <string>
#include <vector>

#include "core/cost.hpp"

namespace sagsim {

// Per-device compute capacity frozen for the split subproblem. Devices that
// offloaded in the previous iterate keep their realized proportional share;
// devices at beta = 0 get the share they would hold if every device routed
// to the same node offloaded its whole task (so the subproblem sees a finite
// compute delay and a sensible marginal energy instead of a 0/0).
std::vector<double> frozen_shares(const Scenario& s, const Decisions& dec);

struct SplitOutcome {
    std::vector<double> beta;
    bool feasible = true;
    std::vector<int> infeasible_devices;  // deadline unreachable both ways
    std::string message;
};

struct SplitDeviceModel {
    double lo = 0.0, hi = 0.0;   // feasible interval for beta
    double slope = 0.0;          // d(objective)/d(beta) under the frozen blocks
    bool feasible = true;
};

// The 1-D linear program of one device: interval from the two delay
// constraints, slope from the frozen marginal energies.
SplitDeviceModel split_device_model(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                    const std::vector<double>& shares, int j);

// Objective of the frozen-share model at an arbitrary beta vector (test and
// descent-check hook; the solver itself works per device).
double split_model_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                        const std::vector<double>& shares, const std::vector<double>& beta);

// Every other block fixed, each device's split solved at an interval
// endpoint (ties toward the smaller beta).
SplitOutcome solve_split(const Scenario& s, const Decisions& dec);
SplitOutcome solve_split(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                         const std::vector<double>& shares);

}  // namespace sagsim
