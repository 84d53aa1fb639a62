#pragma once

#include <string>
#include <vector>

#include "core/cost.hpp"

namespace sagsim {

// The proposed scheme plus every comparison variant. Each variant pins
// exactly the blocks its name says and runs the remaining phases unchanged.
enum class Variant {
    Proposed,
    AllLocal,
    NoCollaboration,
    CenteredUavs,
    Ato,
    Fto,
    Rsa,
    Fpa,
    Optimal,
};

Variant variant_from_string(const std::string& name);
std::string variant_to_string(Variant v);
const std::vector<Variant>& all_variants();

struct PhaseTrace {
    double seconds = 0.0;
    int iterations = 0;
    bool reverted = false;
};

struct BcdIterTrace {
    double q = 0.0;
    double max_violation = 0.0;
    PhaseTrace split, matching, power, deploy, routing;
};

struct BcdResult {
    Decisions decisions;
    CostReport report;
    std::vector<BcdIterTrace> trace;
    int outer_iters = 0;
    bool converged = false;
    bool feasible = false;
    std::string diagnostic;
};

BcdResult run_bcd(const Scenario& s, Variant variant);
BcdResult run_bcd(const Scenario& s, Variant variant, double eps4, int max_outer);

}  // namespace sagsim
