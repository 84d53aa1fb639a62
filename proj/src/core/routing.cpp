#include "core/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/convex.hpp"

namespace sagsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
double cube(double v) { return v * v * v; }
}  // namespace

RoutingLayout build_routing_layout(const Scenario& s, bool allow_relays) {
    RoutingLayout lay;
    lay.allow_relays = allow_relays;
    const int K = static_cast<int>(s.uavs.size());
    const int S = static_cast<int>(s.satellites.size());
    int next = 0;
    for (int j = 0; j < static_cast<int>(s.devices.size()); ++j) {
        RoutingLayout::DeviceSlots d;
        d.offset = next;
        d.w_slot = next++;
        if (allow_relays) {
            for (int k2 = 0; k2 < K; ++k2) {
                if (k2 == s.association[j]) continue;
                d.relays.emplace_back(next++, k2);
            }
        }
        for (int si = 0; si < S; ++si) d.sats.emplace_back(next++, si);
        d.count = next - d.offset;
        lay.dev.push_back(d);
    }
    lay.dim = next;
    return lay;
}

RelaxedCost build_relaxed_cost(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                               bool allow_relays) {
    RelaxedCost rc;
    rc.s = &s;
    rc.layout = build_routing_layout(s, allow_relays);
    const int J = static_cast<int>(s.devices.size());
    rc.K = static_cast<int>(s.uavs.size());
    rc.S = static_cast<int>(s.satellites.size());
    rc.bits.resize(J);
    rc.load_cycles.resize(J);
    rc.l_tx.resize(J);
    rc.e_const_j.resize(J);
    rc.cell.resize(J);
    for (int j = 0; j < J; ++j) {
        rc.bits[j] = dec.beta[j];
        rc.load_cycles[j] = s.devices[j].task.cycles_per_bit * dec.beta[j];
        rc.cell[j] = s.association[j];
        const DelayEnergy tx = tx_cost(dec.beta[j], lt.access_rate[j], dec.power[j]);
        const DelayEnergy loc = local_cost(s.devices[j], dec.beta[j]);
        rc.l_tx[j] = tx.delay_s;
        rc.e_const_j[j] = tx.energy_j + loc.energy_j;
        rc.const_energy += tx.energy_j + loc.energy_j;
        if (dec.beta[j] <= 0.0 || !std::isfinite(tx.delay_s)) rc.layout.dev[j].frozen = true;
    }
    rc.rate_uav = lt.backhaul_rate_uav;
    rc.rate_sat = lt.backhaul_rate_sat;
    rc.prop.assign(static_cast<size_t>(rc.K) * std::max(rc.S, 1), 0.0);
    for (int k = 0; k < rc.K; ++k)
        for (int si = 0; si < rc.S; ++si)
            rc.prop[k * rc.S + si] = sat_prop_delay_s(s, dec, k, si);
    rc.f_max.resize(rc.K);
    rc.kappa.resize(rc.K);
    rc.relay_power.resize(rc.K);
    for (int k = 0; k < rc.K; ++k) {
        rc.f_max[k] = s.uavs[k].cpu_hz;
        rc.kappa[k] = s.uavs[k].chip_coeff;
        rc.relay_power[k] = s.uavs[k].tx_power_w;
    }
    return rc;
}

double RelaxedCost::node_workload(const std::vector<double>& x, int n) const {
    double w = 0.0;
    for (size_t j = 0; j < layout.dev.size(); ++j) {
        const auto& d = layout.dev[j];
        if (load_cycles[j] <= 0.0) continue;
        if (cell[j] == n) {
            w += x[d.w_slot] * load_cycles[j];
        } else {
            for (const auto& [slot, k2] : d.relays)
                if (k2 == n) w += x[slot] * load_cycles[j];
        }
    }
    return w;
}

double RelaxedCost::q(const std::vector<double>& x) const {
    double total = const_energy;
    // compute energy per UAV node: kappa F^2 sum (psi L)^3 / W^2
    for (int n = 0; n < K; ++n) {
        const double w = node_workload(x, n);
        if (w <= 0.0) continue;
        double acc = 0.0;
        for (size_t j = 0; j < layout.dev.size(); ++j) {
            const auto& d = layout.dev[j];
            if (load_cycles[j] <= 0.0) continue;
            double psi = 0.0;
            if (cell[j] == n) {
                psi = x[d.w_slot];
            } else {
                for (const auto& [slot, k2] : d.relays)
                    if (k2 == n) psi = x[slot];
            }
            if (psi > 0.0) acc += cube(psi * load_cycles[j]);
        }
        total += kappa[n] * f_max[n] * f_max[n] * acc / (w * w);
    }
    // backhaul energies
    for (size_t j = 0; j < layout.dev.size(); ++j) {
        const auto& d = layout.dev[j];
        if (bits[j] <= 0.0) continue;
        const int k = cell[j];
        for (const auto& [slot, k2] : d.relays) {
            const double r = rate_uav[k * K + k2];
            if (x[slot] > 0.0) total += relay_power[k] * x[slot] * bits[j] / r;
        }
        for (const auto& [slot, si] : d.sats) {
            const double r = rate_sat[k * S + si];
            if (x[slot] > 0.0) total += relay_power[k] * x[slot] * bits[j] / r;
        }
    }
    return total;
}

void RelaxedCost::q_grad(const std::vector<double>& x, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    for (int n = 0; n < K; ++n) {
        const double w = node_workload(x, n);
        if (w <= 0.0) continue;
        double acc = 0.0;
        for (size_t j = 0; j < layout.dev.size(); ++j) {
            const auto& d = layout.dev[j];
            if (load_cycles[j] <= 0.0) continue;
            double psi = 0.0;
            if (cell[j] == n) {
                psi = x[d.w_slot];
            } else {
                for (const auto& [slot, k2] : d.relays)
                    if (k2 == n) psi = x[slot];
            }
            acc += cube(psi * load_cycles[j]);
        }
        const double kf2 = kappa[n] * f_max[n] * f_max[n];
        for (size_t j = 0; j < layout.dev.size(); ++j) {
            const auto& d = layout.dev[j];
            if (load_cycles[j] <= 0.0) continue;
            int slot = -1;
            if (cell[j] == n) {
                slot = d.w_slot;
            } else {
                for (const auto& [sl, k2] : d.relays)
                    if (k2 == n) slot = sl;
            }
            if (slot < 0) continue;
            const double L = load_cycles[j];
            const double psi = x[slot];
            g[slot] += kf2 * (3.0 * psi * psi * cube(L) / (w * w) - 2.0 * acc * L / (w * w * w));
        }
    }
    for (size_t j = 0; j < layout.dev.size(); ++j) {
        const auto& d = layout.dev[j];
        if (bits[j] <= 0.0) continue;
        const int k = cell[j];
        for (const auto& [slot, k2] : d.relays)
            g[slot] += relay_power[k] * bits[j] / rate_uav[k * K + k2];
        for (const auto& [slot, si] : d.sats)
            g[slot] += relay_power[k] * bits[j] / rate_sat[k * S + si];
    }
}

double RelaxedCost::delay(int j, const std::vector<double>& x) const {
    const auto& d = layout.dev[j];
    if (bits[j] <= 0.0) return 0.0;
    const int k = cell[j];
    double total = 0.0;
    const double wshare = x[d.w_slot];
    if (wshare > 0.0) {
        const double dn = node_workload(x, k) / f_max[k];
        total += wshare * (l_tx[j] + dn);
    }
    for (const auto& [slot, k2] : d.relays) {
        const double v = x[slot];
        if (v <= 0.0) continue;
        double flow = 0.0;
        for (size_t i = 0; i < layout.dev.size(); ++i) {
            if (cell[i] != k) continue;
            for (const auto& [sl2, kk] : layout.dev[i].relays)
                if (kk == k2) flow += x[sl2] * bits[i];
        }
        const double t_rel = flow / rate_uav[k * K + k2];
        const double dn = node_workload(x, k2) / f_max[k2];
        total += v * (l_tx[j] + t_rel + dn);
    }
    for (const auto& [slot, si] : d.sats) {
        const double z = x[slot];
        if (z <= 0.0) continue;
        double flow = 0.0;
        for (size_t i = 0; i < layout.dev.size(); ++i) {
            if (cell[i] != k) continue;
            for (const auto& [sl2, ss] : layout.dev[i].sats)
                if (ss == si) flow += x[sl2] * bits[i];
        }
        total += z * (l_tx[j] + flow / rate_sat[k * S + si] + prop[k * S + si]);
    }
    return total;
}

void RelaxedCost::delay_grad(int j, const std::vector<double>& x, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    const auto& d = layout.dev[j];
    if (bits[j] <= 0.0) return;
    const int k = cell[j];

    // local/among-UAV leg
    {
        const double dn = node_workload(x, k) / f_max[k];
        g[d.w_slot] += l_tx[j] + dn;
        const double wshare = x[d.w_slot];
        if (wshare > 0.0) {
            // D_k depends on everyone computing at k
            for (size_t i = 0; i < layout.dev.size(); ++i) {
                const auto& di = layout.dev[i];
                if (load_cycles[i] <= 0.0) continue;
                if (cell[i] == k) {
                    g[di.w_slot] += wshare * load_cycles[i] / f_max[k];
                } else {
                    for (const auto& [sl2, kk] : di.relays)
                        if (kk == k) g[sl2] += wshare * load_cycles[i] / f_max[k];
                }
            }
        }
    }
    for (const auto& [slot, k2] : d.relays) {
        double flow = 0.0;
        for (size_t i = 0; i < layout.dev.size(); ++i) {
            if (cell[i] != k) continue;
            for (const auto& [sl2, kk] : layout.dev[i].relays)
                if (kk == k2) flow += x[sl2] * bits[i];
        }
        const double rate = rate_uav[k * K + k2];
        const double t_rel = flow / rate;
        const double dn = node_workload(x, k2) / f_max[k2];
        g[slot] += l_tx[j] + t_rel + dn;
        const double v = x[slot];
        if (v > 0.0) {
            for (size_t i = 0; i < layout.dev.size(); ++i) {
                const auto& di = layout.dev[i];
                if (cell[i] == k) {
                    for (const auto& [sl2, kk] : di.relays)
                        if (kk == k2) g[sl2] += v * bits[i] / rate;
                }
                if (load_cycles[i] <= 0.0) continue;
                if (cell[i] == k2) {
                    g[di.w_slot] += v * load_cycles[i] / f_max[k2];
                } else {
                    for (const auto& [sl2, kk] : di.relays)
                        if (kk == k2) g[sl2] += v * load_cycles[i] / f_max[k2];
                }
            }
        }
    }
    for (const auto& [slot, si] : d.sats) {
        double flow = 0.0;
        for (size_t i = 0; i < layout.dev.size(); ++i) {
            if (cell[i] != k) continue;
            for (const auto& [sl2, ss] : layout.dev[i].sats)
                if (ss == si) flow += x[sl2] * bits[i];
        }
        const double rate = rate_sat[k * S + si];
        g[slot] += l_tx[j] + flow / rate + prop[k * S + si];
        const double z = x[slot];
        if (z > 0.0) {
            for (size_t i = 0; i < layout.dev.size(); ++i) {
                if (cell[i] != k) continue;
                for (const auto& [sl2, ss] : layout.dev[i].sats)
                    if (ss == si) g[sl2] += z * bits[i] / rate;
            }
        }
    }
}

std::vector<double> RelaxedCost::from_routes(const std::vector<Route>& routes) const {
    std::vector<double> x(layout.dim, 0.0);
    for (size_t j = 0; j < layout.dev.size(); ++j) {
        const auto& d = layout.dev[j];
        const Route& r = routes[j];
        int slot = d.w_slot;
        if (r.kind == RouteKind::Relay) {
            for (const auto& [sl, k2] : d.relays)
                if (k2 == r.target) slot = sl;
        } else if (r.kind == RouteKind::Satellite) {
            for (const auto& [sl, si] : d.sats)
                if (si == r.target) slot = sl;
        }
        x[slot] = 1.0;
    }
    return x;
}

double proximal_objective(const RelaxedCost& rc, const std::vector<double>& x,
                          const std::vector<double>& anchor, RoutingBlock block, double mu) {
    double val = rc.q(x);
    for (const auto& d : rc.layout.dev) {
        if (block == RoutingBlock::W) {
            val += 0.5 * mu * (x[d.w_slot] - anchor[d.w_slot]) * (x[d.w_slot] - anchor[d.w_slot]);
        } else if (block == RoutingBlock::V) {
            for (const auto& [slot, k2] : d.relays)
                val += 0.5 * mu * (x[slot] - anchor[slot]) * (x[slot] - anchor[slot]);
        } else {
            for (const auto& [slot, si] : d.sats)
                val += 0.5 * mu * (x[slot] - anchor[slot]) * (x[slot] - anchor[slot]);
        }
    }
    return val;
}

std::vector<double> block_update(const RelaxedCost& rc, RoutingBlock block,
                                 const std::vector<double>& anchor, double mu) {
    bool block_exists = false;
    for (const auto& d : rc.layout.dev) {
        if (d.frozen) continue;
        if (block == RoutingBlock::W) block_exists = true;
        if (block == RoutingBlock::V && !d.relays.empty()) block_exists = true;
        if (block == RoutingBlock::Z && !d.sats.empty()) block_exists = true;
    }
    if (!block_exists) return anchor;

    ConvexProgram prog;
    prog.dimension = rc.layout.dim;
    prog.lo.assign(prog.dimension, 0.0);
    prog.hi.assign(prog.dimension, 1.0);
    std::vector<int> block_slots;
    for (const auto& d : rc.layout.dev) {
        if (d.frozen) {
            for (int i = 0; i < d.count; ++i) {
                prog.lo[d.offset + i] = anchor[d.offset + i];
                prog.hi[d.offset + i] = anchor[d.offset + i];
            }
            continue;
        }
        std::vector<int> group(d.count);
        for (int i = 0; i < d.count; ++i) group[i] = d.offset + i;
        prog.simplex_groups.push_back(std::move(group));
        if (block == RoutingBlock::W) {
            block_slots.push_back(d.w_slot);
        } else if (block == RoutingBlock::V) {
            for (const auto& [slot, k2] : d.relays) block_slots.push_back(slot);
        } else {
            for (const auto& [slot, si] : d.sats) block_slots.push_back(slot);
        }
    }
    prog.objective = [&rc, &anchor, &block_slots, mu](const std::vector<double>& x) {
        double val = rc.q(x);
        for (int sl : block_slots) val += 0.5 * mu * (x[sl] - anchor[sl]) * (x[sl] - anchor[sl]);
        return val;
    };
    prog.gradient = [&rc, &anchor, &block_slots, mu](const std::vector<double>& x,
                                                     std::vector<double>& g) {
        rc.q_grad(x, g);
        for (int sl : block_slots) g[sl] += mu * (x[sl] - anchor[sl]);
    };
    for (size_t j = 0; j < rc.layout.dev.size(); ++j) {
        if (rc.layout.dev[j].frozen || rc.bits[j] <= 0.0) continue;
        ConvexProgram::Constraint c;
        c.name = "delay[" + std::to_string(j) + "]";
        const double phi = rc.s->devices[j].task.deadline_s;
        c.g = [&rc, j, phi](const std::vector<double>& x) { return rc.delay(static_cast<int>(j), x) - phi; };
        c.grad = [&rc, j](const std::vector<double>& x, std::vector<double>& g) {
            rc.delay_grad(static_cast<int>(j), x, g);
        };
        prog.constraints.push_back(std::move(c));
    }

    SolveOptions opt;
    opt.tol = 1e-8;
    opt.max_iter = 200;
    SolveResult res = solve(prog, anchor, opt);
    if (res.status == SolveStatus::InfeasibleStart) return anchor;
    if (rc.q(res.x) > rc.q(anchor) * (1.0 + 1e-12)) return anchor;  // keep descent certain
    return res.x;
}

RoundRepairResult round_and_repair(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                   const RelaxedCost& rc, const std::vector<double>& relaxed) {
    RoundRepairResult out;
    out.routes.resize(s.devices.size());
    for (size_t j = 0; j < s.devices.size(); ++j) {
        const auto& d = rc.layout.dev[j];
        // argmax with the stated tie order: local first, then relays by id,
        // then satellites by id
        double best = relaxed[d.w_slot];
        Route r{RouteKind::AtServing, -1};
        for (const auto& [slot, k2] : d.relays) {
            if (relaxed[slot] > best) {
                best = relaxed[slot];
                r = Route{RouteKind::Relay, k2};
            }
        }
        for (const auto& [slot, si] : d.sats) {
            if (relaxed[slot] > best) {
                best = relaxed[slot];
                r = Route{RouteKind::Satellite, si};
            }
        }
        out.routes[j] = r;
    }

    // greedy repair of deadline violations
    Decisions cand = dec;
    cand.route = out.routes;
    const int max_repairs = static_cast<int>(s.devices.size()) * (rc.K + rc.S + 1);
    for (int pass = 0; pass < max_repairs; ++pass) {
        const LinkTable cur_lt = build_link_table(s, cand);
        (void)lt;
        int worst = -1;
        double worst_molation = 0.0;
        for (size_t j = 0; j < s.devices.size(); ++j) {
            if (cand.beta[j] <= 0.0) continue;
            const double over =
                remote_cost(s, cand, cur_lt, static_cast<int>(j)).delay_s - s.devices[j].task.deadline_s;
            if (over > 1e-9 * s.devices[j].task.deadline_s && over > worst_molation) {
                worst_molation = over;
                worst = static_cast<int>(j);
            }
        }
        if (worst < 0) break;

        // move the worst violator to its delay-minimal destination
        const auto& d = rc.layout.dev[worst];
        Route best_route = cand.route[worst];
        double best_delay = kInf;
        auto try_route = [&](Route r) {
            Decisions probe = cand;
            probe.route[worst] = r;
            const LinkTable plt = build_link_table(s, probe);
            const double dl = remote_cost(s, probe, plt, worst).delay_s;
            if (dl < best_delay) {
                best_delay = dl;
                best_route = r;
            }
        };
        try_route(Route{RouteKind::AtServing, -1});
        for (const auto& [slot, k2] : d.relays) try_route(Route{RouteKind::Relay, k2});
        for (const auto& [slot, si] : d.sats) try_route(Route{RouteKind::Satellite, si});

        const bool same = best_route.kind == cand.route[worst].kind &&
                          best_route.target == cand.route[worst].target;
        if (same) {
            out.feasible = false;
            out.infeasible_devices.push_back(worst);
            break;  // already on its delay-minimal route and still violating
        }
        cand.route[worst] = best_route;
        ++out.repairs;
    }
    out.routes = cand.route;
    return out;
}

BsumResult solve_uav_offload(const Scenario& s, const Decisions& dec, double eps3, int max_iter,
                             double mu, bool allow_relays) {
    BsumResult out;
    const LinkTable lt = build_link_table(s, dec);
    RelaxedCost rc = build_relaxed_cost(s, dec, lt, allow_relays);

    std::vector<double> x = rc.from_routes(dec.route);
    double prev_q = rc.q(x);
    out.q_trace.push_back(prev_q);

    for (int it = 0; it < max_iter; ++it) {
        x = block_update(rc, RoutingBlock::W, x, mu);
        out.q_trace.push_back(rc.q(x));
        if (allow_relays) {
            x = block_update(rc, RoutingBlock::V, x, mu);
            out.q_trace.push_back(rc.q(x));
        }
        x = block_update(rc, RoutingBlock::Z, x, mu);
        const double cur_q = rc.q(x);
        out.q_trace.push_back(cur_q);
        out.outer_iters = it + 1;
        const double denom = std::max(std::fabs(prev_q), 1e-300);
        if (std::fabs(prev_q - cur_q) / denom <= eps3) {
            out.converged = true;
            break;
        }
        prev_q = cur_q;
    }

    RoundRepairResult rr = round_and_repair(s, dec, lt, rc, x);
    out.routes = rr.routes;
    out.relaxed = std::move(x);
    out.feasible = rr.feasible;
    out.infeasible_devices = rr.infeasible_devices;
    out.repairs = rr.repairs;
    return out;
}

}  // namespace sagsim
