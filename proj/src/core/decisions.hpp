#pragma once

#include <vector>

#include "core/scenario.hpp"

namespace sagsim {

// Where a device's offloaded bits execute. Exactly one destination per
// device, so the single-location constraint holds by construction; the
// paper's (w, v, z) indicator arrays are derived views.
enum class RouteKind { AtServing, Relay, Satellite };

struct Route {
    RouteKind kind = RouteKind::AtServing;
    int target = -1;  // relay UAV id or satellite id; unused for AtServing
};

// The seven decision blocks of the joint problem, passed between the
// coordinate-descent phases as one record.
struct Decisions {
    std::vector<double> beta;   // bits offloaded toward the serving UAV
    std::vector<int> band;      // assigned sub-band, -1 when unmatched
    std::vector<double> power;  // transmit power on the assigned band, W
    std::vector<Vec2> uav_pos;  // o_k, the deployment block
    std::vector<Route> route;

    static Decisions initial(const Scenario& s) {
        Decisions d;
        const size_t J = s.devices.size();
        d.beta.assign(J, 0.0);
        d.band.assign(J, -1);
        d.power.assign(J, 0.0);
        d.route.assign(J, Route{});
        d.uav_pos.reserve(s.uavs.size());
        for (const auto& u : s.uavs) d.uav_pos.push_back(u.pos);
        return d;
    }

    // A device contributes interference only while it actually transmits.
    bool transmits(int j) const { return band[j] >= 0 && beta[j] > 0.0 && power[j] > 0.0; }

    bool w(int j) const { return route[j].kind == RouteKind::AtServing; }
    bool v(int j, int relay_uav) const {
        return route[j].kind == RouteKind::Relay && route[j].target == relay_uav;
    }
    bool z(int j, int sat) const {
        return route[j].kind == RouteKind::Satellite && route[j].target == sat;
    }
};

}  // namespace sagsim
