#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/channel.hpp"
#include "core/decisions.hpp"
#include "core/scenario.hpp"

namespace sagsim {

// Preference tables of one cell. Devices are indexed locally (members[i] is
// the global id). Strict orders come from the (value, lower-id-wins)
// comparison, since raw rates can tie when the sub-bands are homogeneous.
struct PreferenceProfile {
    std::vector<int> members;
    std::vector<std::vector<double>> device_pref;  // [local j][b]
    std::vector<std::vector<double>> band_pref;    // [b][local j]
};

// Achievable rate of device j on band b when every device splits its power
// budget evenly across the sub-bands (the hypothesis both sides rank with).
double device_pref_value(const Scenario& s, const LinkTable& lt, int j, int b);

// Rate reward minus the weighted power leaked toward the other cells.
double band_pref_value(const Scenario& s, const LinkTable& lt, int j, int b);

PreferenceProfile build_cell_prefs(const Scenario& s, const LinkTable& lt, int k);

struct Matching {
    std::vector<int> device_to_band;  // local index -> band, -1 unmatched
    std::vector<int> band_to_device;  // band -> local index, -1 free
    int proposals = 0;
};

// Device-proposing deferred acceptance over the given tables.
Matching deferred_acceptance(const PreferenceProfile& prefs, int num_bands);

struct StabilityReport {
    bool stable = true;
    std::vector<std::pair<int, int>> blocking_pairs;  // (local device, band)
};
StabilityReport is_stable(const Matching& m, const PreferenceProfile& prefs);

// Exhaustive search over injective partial assignments (device -> band or
// none), minimizing the supplied objective. Guarded to toy sizes.
struct ExhaustiveResult {
    std::vector<int> assignment;
    double objective = 0.0;
    long cases = 0;
};
ExhaustiveResult exhaustive_assignment(
    int num_devices, int num_bands,
    const std::function<double(const std::vector<int>&)>& objective_fn);

}  // namespace sagsim
