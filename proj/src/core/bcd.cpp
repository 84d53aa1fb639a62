#include "core/bcd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/deploy.hpp"
#include "core/matching.hpp"
#include "core/power.hpp"
#include "core/rng.hpp"
#include "core/routing.hpp"
#include "core/split.hpp"

namespace sagsim {

namespace {

constexpr double kAcceptSlack = 1.0 + 1e-12;

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// seeded random injective band assignment per cell (the RSA variant)
std::vector<int> random_assignment(const Scenario& s) {
    std::vector<int> band(s.devices.size(), -1);
    Rng rng = Rng::stream(s.seed, "rsa");
    const int B = s.phys.num_subbands;
    for (int k = 0; k < static_cast<int>(s.uavs.size()); ++k) {
        std::vector<int> pool(B);
        for (int b = 0; b < B; ++b) pool[b] = b;
        for (int j : s.cell_members(k)) {
            if (pool.empty()) break;
            const size_t pick = static_cast<size_t>(rng.next_below(pool.size()));
            band[j] = pool[pick];
            pool.erase(pool.begin() + static_cast<long>(pick));
        }
    }
    return band;
}

}  // namespace

Variant variant_from_string(const std::string& name) {
    if (name == "proposed") return Variant::Proposed;
    if (name == "all-local") return Variant::AllLocal;
    if (name == "no-collaboration") return Variant::NoCollaboration;
    if (name == "c-uavs") return Variant::CenteredUavs;
    if (name == "ato") return Variant::Ato;
    if (name == "fto") return Variant::Fto;
    if (name == "rsa") return Variant::Rsa;
    if (name == "fpa") return Variant::Fpa;
    if (name == "optimal") return Variant::Optimal;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string variant_to_string(Variant v) {
    switch (v) {
        case Variant::Proposed: return "proposed";
        case Variant::AllLocal: return "all-local";
        case Variant::NoCollaboration: return "no-collaboration";
        case Variant::CenteredUavs: return "c-uavs";
        case Variant::Ato: return "ato";
        case Variant::Fto: return "fto";
        case Variant::Rsa: return "rsa";
        case Variant::Fpa: return "fpa";
        case Variant::Optimal: return "optimal";
    }
    return "?";
}

const std::vector<Variant>& all_variants() {
    static const std::vector<Variant> v = {
        Variant::Proposed, Variant::AllLocal, Variant::NoCollaboration,
        Variant::CenteredUavs, Variant::Ato, Variant::Fto,
        Variant::Rsa, Variant::Fpa, Variant::Optimal};
    return v;
}

BcdResult run_bcd(const Scenario& s, Variant variant) {
    return run_bcd(s, variant, s.config.eps4, s.config.bcd_max_outer);
}

BcdResult run_bcd(const Scenario& s, Variant variant, double eps4, int max_outer) {
    const int J = static_cast<int>(s.devices.size());
    BcdResult out;

    Decisions dec = Decisions::initial(s);
    // equal-split power hypothesis for every device; devices that never
    // offload simply keep it (they do not transmit)
    for (int j = 0; j < J; ++j)
        dec.power[j] = s.devices[j].max_tx_power_w / s.phys.num_subbands;

    const bool fixed_beta = variant == Variant::Ato || variant == Variant::Fto;
    if (variant == Variant::Ato)
        for (int j = 0; j < J; ++j) dec.beta[j] = s.devices[j].task.data_bits;
    if (variant == Variant::Fto)
        for (int j = 0; j < J; ++j) dec.beta[j] = 0.5 * s.devices[j].task.data_bits;
    if (variant == Variant::Fpa)
        for (int j = 0; j < J; ++j) dec.power[j] = 0.5 * s.devices[j].max_tx_power_w;

    if (variant == Variant::AllLocal) {
        out.decisions = dec;
        out.decisions.power.assign(J, 0.0);
        out.decisions.band.assign(J, -1);
        out.report = objective(s, out.decisions);
        out.converged = true;
        out.outer_iters = 0;
        out.feasible = out.report.feasible;
        if (!out.feasible) out.diagnostic = "all-local: some local delays exceed deadlines";
        BcdIterTrace t;
        t.q = out.report.objective_q_j;
        t.max_violation = out.report.max_violation;
        out.trace.push_back(t);
        return out;
    }

    if (variant == Variant::Rsa) dec.band = random_assignment(s);
    if (variant == Variant::Optimal) {
        for (int k = 0; k < static_cast<int>(s.uavs.size()); ++k) {
            const int jk = static_cast<int>(s.cell_members(k).size());
            if (jk > 6 || s.phys.num_subbands > 8)
                throw std::invalid_argument(
                    "optimal: exhaustive sub-band search refused (cell devices > 6 or bands > 8)");
        }
    }

    const bool allow_relays = variant != Variant::NoCollaboration;

    CostReport rep = objective(s, dec);
    double q_prev = rep.objective_q_j;

    for (int it = 0; it < max_outer; ++it) {
        BcdIterTrace tr;
        double q_cur = q_prev;
        Decisions best = dec;

        auto consider = [&](Decisions&& cand, PhaseTrace& pt) {
            const CostReport crep = objective(s, cand);
            const double qc = crep.objective_q_j;
            const bool accept = !(qc > q_cur * kAcceptSlack) || !std::isfinite(q_cur);
            if (accept) {
                best = std::move(cand);
                q_cur = qc;
                rep = crep;
            } else {
                pt.reverted = true;
            }
        };

        // 1) device offload split
        if (!fixed_beta) {
            const double t0 = now_seconds();
            SplitOutcome sp = solve_split(s, best);
            if (!sp.feasible) {
                out.diagnostic = sp.message;
                out.decisions = best;
                out.report = rep;
                out.outer_iters = it;
                out.feasible = false;
                return out;
            }
            Decisions cand = best;
            cand.beta = sp.beta;
            consider(std::move(cand), tr.split);
            tr.split.seconds = now_seconds() - t0;
        }

        // 2a) sub-band assignment
        if (variant != Variant::Rsa) {
            const double t0 = now_seconds();
            Decisions cand = best;
            const LinkTable lt = build_link_table(s, best);
            if (variant == Variant::Optimal) {
                for (int k = 0; k < static_cast<int>(s.uavs.size()); ++k) {
                    const auto members = s.cell_members(k);
                    auto eval = [&](const std::vector<int>& assign) {
                        Decisions probe = cand;
                        for (size_t li = 0; li < members.size(); ++li) {
                            probe.band[members[li]] = assign[li];
                            if (assign[li] < 0) probe.beta[members[li]] = 0.0;
                        }
                        return objective(s, probe).objective_q_j;
                    };
                    const ExhaustiveResult ex = exhaustive_assignment(
                        static_cast<int>(members.size()), s.phys.num_subbands, eval);
                    for (size_t li = 0; li < members.size(); ++li) {
                        cand.band[members[li]] = ex.assignment[li];
                        if (ex.assignment[li] < 0) cand.beta[members[li]] = 0.0;
                    }
                }
            } else {
                for (int k = 0; k < static_cast<int>(s.uavs.size()); ++k) {
                    const PreferenceProfile prefs = build_cell_prefs(s, lt, k);
                    const Matching match = deferred_acceptance(prefs, s.phys.num_subbands);
                    for (size_t li = 0; li < prefs.members.size(); ++li) {
                        cand.band[prefs.members[li]] = match.device_to_band[li];
                        if (match.device_to_band[li] < 0) cand.beta[prefs.members[li]] = 0.0;
                    }
                }
            }
            consider(std::move(cand), tr.matching);
            tr.matching.seconds = now_seconds() - t0;
        }

        // 2b) transmit power control
        if (variant != Variant::Fpa) {
            const double t0 = now_seconds();
            CcpResult pr = solve_power(s, best, s.config.eps1, s.config.ccp_max_iter);
            tr.power.iterations = pr.iterations;
            if (pr.feasible_start) {
                Decisions cand = best;
                cand.power = pr.power;
                consider(std::move(cand), tr.power);
            } else {
                tr.power.reverted = true;
                if (out.diagnostic.empty()) out.diagnostic = pr.message;
            }
            tr.power.seconds = now_seconds() - t0;
        }

        // 3) placement
        if (variant != Variant::CenteredUavs) {
            const double t0 = now_seconds();
            DeployResult dr = solve_deployment(s, best, s.config.eps2, s.config.sca_max_iter);
            tr.deploy.iterations = dr.iterations;
            Decisions cand = best;
            cand.uav_pos = dr.positions;
            consider(std::move(cand), tr.deploy);
            tr.deploy.seconds = now_seconds() - t0;
        }

        // 4) among-UAV / satellite routing
        {
            const double t0 = now_seconds();
            BsumResult br = solve_uav_offload(s, best, s.config.eps3, s.config.bsum_max_iter,
                                              s.config.bsum_mu, allow_relays);
            tr.routing.iterations = br.outer_iters;
            Decisions cand = best;
            cand.route = br.routes;
            consider(std::move(cand), tr.routing);
            tr.routing.seconds = now_seconds() - t0;
        }

        dec = best;
        tr.q = q_cur;
        tr.max_violation = rep.max_violation;
        out.trace.push_back(tr);
        out.outer_iters = it + 1;

        if (std::isfinite(q_prev)) {
            const double denom = std::max(std::fabs(q_prev), 1e-300);
            if (std::fabs(q_prev - q_cur) / denom <= eps4) {
                out.converged = true;
                break;
            }
        }
        q_prev = q_cur;
    }

    out.decisions = dec;
    out.report = rep;
    out.feasible = rep.feasible;
    if (!out.feasible && out.diagnostic.empty()) {
        out.diagnostic = "constraints violated at the final iterate:";
        for (const auto& v : rep.violations) out.diagnostic += " [" + v + "]";
    }
    return out;
}

}  // namespace sagsim
