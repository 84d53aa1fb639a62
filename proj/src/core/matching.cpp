#include "core/matching.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sagsim {

namespace {

// strict order: larger value wins, lower id breaks ties
bool prefers(double va, int ida, double vb, int idb) {
    if (va != vb) return va > vb;
    return ida < idb;
}

double hypothesis_power(const Device& d, const PhysConfig& phys) {
    return d.max_tx_power_w / phys.num_subbands;
}

}  // namespace

double device_pref_value(const Scenario& s, const LinkTable& lt, int j, int b) {
    const int k = s.association[j];
    double interference = 0.0;
    for (int j2 = 0; j2 < lt.J; ++j2) {
        if (j2 == j || s.association[j2] == k) continue;
        interference += hypothesis_power(s.devices[j2], s.phys) * lt.g(j2, k, b);
    }
    const double gamma =
        hypothesis_power(s.devices[j], s.phys) * lt.g(j, k, b) / (interference + s.phys.noise_w);
    return s.phys.subband_hz * std::log1p(gamma) / std::numbers::ln2;
}

double band_pref_value(const Scenario& s, const LinkTable& lt, int j, int b) {
    const int k = s.association[j];
    double leak = 0.0;
    for (int k2 = 0; k2 < lt.K; ++k2) {
        if (k2 == k) continue;
        leak += s.phys.interference_weight * hypothesis_power(s.devices[j], s.phys) * lt.g(j, k2, b);
    }
    return s.phys.match_weight * device_pref_value(s, lt, j, b) - leak;
}

PreferenceProfile build_cell_prefs(const Scenario& s, const LinkTable& lt, int k) {
    PreferenceProfile p;
    p.members = s.cell_members(k);
    const int n = static_cast<int>(p.members.size());
    const int B = s.phys.num_subbands;
    p.device_pref.assign(n, std::vector<double>(B, 0.0));
    p.band_pref.assign(B, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int b = 0; b < B; ++b) {
            p.device_pref[i][b] = device_pref_value(s, lt, p.members[i], b);
            p.band_pref[b][i] = band_pref_value(s, lt, p.members[i], b);
        }
    }
    return p;
}

Matching deferred_acceptance(const PreferenceProfile& prefs, int num_bands) {
    const int n = static_cast<int>(prefs.device_pref.size());
    Matching m;
    m.device_to_band.assign(n, -1);
    m.band_to_device.assign(num_bands, -1);

    // per-device list of bands not yet proposed to (deleted on rejection)
    std::vector<std::vector<bool>> open(n, std::vector<bool>(num_bands, true));
    std::vector<int> open_count(n, num_bands);
    std::vector<int> unmatched;
    for (int i = 0; i < n; ++i) unmatched.push_back(i);

    while (!unmatched.empty()) {
        // proposal round: every unmatched device targets its best open band
        std::vector<std::vector<int>> requests(num_bands);
        std::vector<int> still;
        for (int i : unmatched) {
            if (open_count[i] == 0) continue;  // exhausted every band
            int best = -1;
            for (int b = 0; b < num_bands; ++b) {
                if (!open[i][b]) continue;
                if (best < 0 ||
                    prefers(prefs.device_pref[i][b], b, prefs.device_pref[i][best], best))
                    best = b;
            }
            requests[best].push_back(i);
            ++m.proposals;
        }
        bool any = false;
        for (int b = 0; b < num_bands; ++b) {
            if (requests[b].empty()) continue;
            any = true;
            int winner = m.band_to_device[b];  // incumbent competes
            for (int i : requests[b]) {
                if (winner < 0 ||
                    prefers(prefs.band_pref[b][i], i, prefs.band_pref[b][winner], winner))
                    winner = i;
            }
            for (int i : requests[b]) {
                if (i == winner) continue;
                open[i][b] = false;  // rejected: delete b from the list
                --open_count[i];
            }
            const int incumbent = m.band_to_device[b];
            if (incumbent >= 0 && incumbent != winner) {
                open[incumbent][b] = false;
                --open_count[incumbent];
                m.device_to_band[incumbent] = -1;
                still.push_back(incumbent);
            }
            m.band_to_device[b] = winner;
            m.device_to_band[winner] = b;
        }
        if (!any) break;  // nobody could propose: remaining devices stay unmatched
        std::vector<int> next;
        for (int i : unmatched)
            if (m.device_to_band[i] < 0 && open_count[i] > 0) next.push_back(i);
        for (int i : still)
            if (open_count[i] > 0) next.push_back(i);
        unmatched = std::move(next);
    }
    return m;
}

StabilityReport is_stable(const Matching& m, const PreferenceProfile& prefs) {
    StabilityReport rep;
    const int n = static_cast<int>(prefs.device_pref.size());
    const int B = static_cast<int>(prefs.band_pref.size());
    for (int i = 0; i < n; ++i) {
        for (int b = 0; b < B; ++b) {
            if (m.device_to_band[i] == b) continue;
            // the device side: strictly prefers b to its partner (an
            // unmatched device prefers any band of positive value)
            bool dev_wants;
            if (m.device_to_band[i] < 0) {
                dev_wants = prefs.device_pref[i][b] > 0.0;
            } else {
                const int cur = m.device_to_band[i];
                dev_wants = prefers(prefs.device_pref[i][b], b, prefs.device_pref[i][cur], cur);
            }
            if (!dev_wants) continue;
            bool band_wants;
            if (m.band_to_device[b] < 0) {
                band_wants = prefs.band_pref[b][i] > 0.0;
            } else {
                const int cur = m.band_to_device[b];
                band_wants = prefers(prefs.band_pref[b][i], i, prefs.band_pref[b][cur], cur);
            }
            if (band_wants) rep.blocking_pairs.emplace_back(i, b);
        }
    }
    rep.stable = rep.blocking_pairs.empty();
    return rep;
}

namespace {

void enumerate_rec(int device, int num_devices, int num_bands, std::vector<int>& cur,
                   std::vector<bool>& used,
                   const std::function<double(const std::vector<int>&)>& objective_fn,
                   ExhaustiveResult& best) {
    if (device == num_devices) {
        const double obj = objective_fn(cur);
        ++best.cases;
        if (best.assignment.empty() || obj < best.objective) {
            best.objective = obj;
            best.assignment = cur;
        }
        return;
    }
    cur[device] = -1;
    enumerate_rec(device + 1, num_devices, num_bands, cur, used, objective_fn, best);
    for (int b = 0; b < num_bands; ++b) {
        if (used[b]) continue;
        used[b] = true;
        cur[device] = b;
        enumerate_rec(device + 1, num_devices, num_bands, cur, used, objective_fn, best);
        used[b] = false;
    }
    cur[device] = -1;
}

}  // namespace

ExhaustiveResult exhaustive_assignment(
    int num_devices, int num_bands,
    const std::function<double(const std::vector<int>&)>& objective_fn) {
    if (num_devices > 6 || num_bands > 8)
        throw std::invalid_argument(
            "exhaustive_assignment: guarded to at most 6 devices and 8 bands");
    ExhaustiveResult best;
    std::vector<int> cur(num_devices, -1);
    std::vector<bool> used(num_bands, false);
    enumerate_rec(0, num_devices, num_bands, cur, used, objective_fn, best);
    return best;
}

}  // namespace sagsim
