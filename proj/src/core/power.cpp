#include "core/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/convex.hpp"

namespace sagsim {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

double PowerModel::total_rx(int j, const std::vector<double>& p) const {
    double t = noise;
    for (int i = 0; i < size(); ++i) t += p[i] * a[j][i];
    return t;
}

double PowerModel::interference(int j, const std::vector<double>& p) const {
    double t = 0.0;
    for (int i = 0; i < size(); ++i)
        if (i != j) t += p[i] * a[j][i];
    return t;
}

double PowerModel::rate_log(int j, const std::vector<double>& p) const {
    const double itf = interference(j, p);
    return std::log1p(p[j] * a[j][j] / (itf + noise)) / kLn2;
}

double PowerModel::energy(int j, const std::vector<double>& p) const {
    if (beta[j] <= 0.0) return 0.0;
    const double d = rate_log(j, p);
    if (d <= 0.0) return 0.0;  // p_j = 0: nothing transmitted under this profile
    return beta[j] * p[j] / (omega * d);
}

void PowerModel::energy_grad(int j, const std::vector<double>& p, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (beta[j] <= 0.0) return;
    const double t = total_rx(j, p);
    const double isn = interference(j, p) + noise;
    const double d = std::log1p(p[j] * a[j][j] / isn) / kLn2;
    if (d <= 0.0) return;
    const double c = beta[j] / omega;
    // dD/dp_j = a_jj / (ln2 * T); dD/dp_i = a_ji (1/T - 1/ISN) / ln2
    const double dd_own = a[j][j] / (kLn2 * t);
    out[j] = c * (1.0 / d - p[j] * dd_own / (d * d));
    for (int i = 0; i < size(); ++i) {
        if (i == j) continue;
        const double dd = a[j][i] * (1.0 / t - 1.0 / isn) / kLn2;
        out[i] = -c * p[j] * dd / (d * d);
    }
}

double PowerModel::total_energy(const std::vector<double>& p) const {
    double e = 0.0;
    for (int j = 0; j < size(); ++j) e += energy(j, p);
    return e;
}

void PowerModel::total_energy_grad(const std::vector<double>& p, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> g(size());
    for (int j = 0; j < size(); ++j) {
        energy_grad(j, p, g);
        for (int i = 0; i < size(); ++i) out[i] += g[i];
    }
}

double PowerModel::rhat(int j, const std::vector<double>& p) const {
    return req_log[j] - std::log2(total_rx(j, p));
}

void PowerModel::rhat_grad(int j, const std::vector<double>& p, std::vector<double>& out) const {
    const double t = total_rx(j, p);
    for (int i = 0; i < size(); ++i) out[i] = -a[j][i] / (kLn2 * t);
}

double PowerModel::u(int j, const std::vector<double>& p) const {
    return -std::log2(interference(j, p) + noise);
}

void PowerModel::u_grad(int j, const std::vector<double>& p, std::vector<double>& out) const {
    const double isn = interference(j, p) + noise;
    for (int i = 0; i < size(); ++i) out[i] = i == j ? 0.0 : -a[j][i] / (kLn2 * isn);
}

double PowerModel::constraint_true(int j, const std::vector<double>& p) const {
    return rhat(j, p) - u(j, p);
}

PowerModelSet build_power_models(const Scenario& s, const Decisions& dec, const LinkTable& lt,
                                 double feasibility_margin) {
    PowerModelSet set;
    const int B = s.phys.num_subbands;
    std::vector<std::vector<int>> per_band(B);
    for (int j = 0; j < static_cast<int>(s.devices.size()); ++j)
        if (dec.band[j] >= 0 && dec.beta[j] > 0.0) per_band[dec.band[j]].push_back(j);

    for (int b = 0; b < B; ++b) {
        if (per_band[b].empty()) continue;
        PowerModel m;
        m.band = b;
        m.devices = per_band[b];
        m.noise = s.phys.noise_w;
        m.omega = s.phys.subband_hz;
        const int n = m.size();
        m.pmax.resize(n);
        m.beta.resize(n);
        m.req_log.resize(n);
        m.a.assign(n, std::vector<double>(n, 0.0));
        for (int lj = 0; lj < n; ++lj) {
            const int j = m.devices[lj];
            const int k = s.association[j];
            m.pmax[lj] = s.devices[j].max_tx_power_w;
            m.beta[lj] = dec.beta[j];

            // delay budget left for the uplink: deadline minus the frozen
            // route legs (compute, backhaul aggregate, propagation)
            double legs = 0.0;
            const ExecNode node = executing_node(dec, k, j);
            if (node.is_sat) {
                const double rate = lt.rate_sat(k, node.id);
                legs += (rate > 0 ? sat_flow_bits(s, dec, k, node.id) / rate : 0.0) +
                        sat_prop_delay_s(s, dec, k, node.id);
            } else {
                if (node.id != k) {
                    const double rate = lt.rate_uav(k, node.id);
                    legs += rate > 0 ? relay_flow_bits(s, dec, k, node.id) / rate : 0.0;
                }
                const double share = cpu_share_of(s, dec, j);
                if (share > 0.0) legs += s.devices[j].task.cycles_per_bit * dec.beta[j] / share;
            }
            const double budget = s.devices[j].task.deadline_s - legs;
            if (budget <= 0.0) {
                set.devices_without_budget.push_back(j);
                m.req_log[lj] = std::numeric_limits<double>::infinity();
            } else {
                m.req_log[lj] = dec.beta[j] / (m.omega * budget) * (1.0 + feasibility_margin);
            }
            for (int li = 0; li < n; ++li) {
                const int i = m.devices[li];
                const bool same_cell = s.association[i] == k;
                if (li != lj && same_cell && !s.phys.literal_interference) continue;
                m.a[lj][li] = lt.g(i, k, b);
            }
        }
        set.bands.push_back(std::move(m));
    }
    return set;
}

namespace {

// One convexified subproblem (45) of a band at the given anchor.
std::vector<double> solve_band_subproblem(const PowerModel& m, const std::vector<double>& anchor,
                                          double& surrogate_value) {
    const int n = m.size();

    // linear objective: tangent of the concave energy at the anchor
    std::vector<double> coeff(n, 0.0);
    m.total_energy_grad(anchor, coeff);
    double offset = m.total_energy(anchor);
    for (int i = 0; i < n; ++i) offset -= coeff[i] * anchor[i];

    // affine minorants of each U at the anchor
    std::vector<std::vector<double>> ugrad(n, std::vector<double>(n));
    std::vector<double> uoffset(n);
    for (int j = 0; j < n; ++j) {
        m.u_grad(j, anchor, ugrad[j]);
        uoffset[j] = m.u(j, anchor);
        for (int i = 0; i < n; ++i) uoffset[j] -= ugrad[j][i] * anchor[i];
    }

    ConvexProgram prog;
    prog.dimension = n;
    prog.lo.assign(n, 0.0);
    prog.hi = m.pmax;
    prog.objective = [coeff, offset](const std::vector<double>& p) {
        double v = offset;
        for (size_t i = 0; i < p.size(); ++i) v += coeff[i] * p[i];
        return v;
    };
    prog.gradient = [coeff](const std::vector<double>&, std::vector<double>& g) { g = coeff; };
    for (int j = 0; j < n; ++j) {
        ConvexProgram::Constraint c;
        c.name = "rate[" + std::to_string(j) + "]";
        c.g = [&m, j, ugrad, uoffset](const std::vector<double>& p) {
            double ubar = uoffset[j];
            for (size_t i = 0; i < p.size(); ++i) ubar += ugrad[j][i] * p[i];
            return m.rhat(j, p) - ubar;
        };
        c.grad = [&m, j, ugrad](const std::vector<double>& p, std::vector<double>& g) {
            m.rhat_grad(j, p, g);
            for (size_t i = 0; i < p.size(); ++i) g[i] -= ugrad[j][i];
        };
        prog.constraints.push_back(std::move(c));
    }

    SolveOptions opt;
    opt.tol = 1e-9;
    opt.max_iter = 300;
    SolveResult res = solve(prog, anchor, opt);
    surrogate_value = res.objective;
    if (res.status == SolveStatus::InfeasibleStart) {
        surrogate_value = prog.objective(anchor);
        return anchor;  // keep the iterate; CCP stalls at a feasible point
    }
    return res.x;
}

}  // namespace

CcpResult solve_power(const Scenario& s, const Decisions& dec, double eps1, int max_iter) {
    return solve_power(s, dec, build_link_table(s, dec), eps1, max_iter);
}

CcpResult solve_power(const Scenario& s, const Decisions& dec, const LinkTable& lt, double eps1,
                      int max_iter) {
    CcpResult out;
    out.power = dec.power;

    PowerModelSet set = build_power_models(s, dec, lt);
    if (!set.devices_without_budget.empty()) {
        out.feasible_start = false;
        out.binding_devices = set.devices_without_budget;
        std::ostringstream os;
        os << "power: no uplink budget (deadline bound by other legs) for device";
        for (int j : out.binding_devices) os << " " << j;
        out.message = os.str();
        return out;
    }
    if (set.bands.empty()) {
        out.converged = true;
        return out;
    }

    // initial feasible point: the equal-split hypothesis, scaled up together
    // until every rate requirement holds or the caps are reached
    std::vector<std::vector<double>> p;
    for (const auto& m : set.bands) {
        std::vector<double> v(m.size());
        for (int i = 0; i < m.size(); ++i)
            v[i] = std::min(m.pmax[i] / s.phys.num_subbands, m.pmax[i]);
        p.push_back(std::move(v));
    }
    for (int tries = 0; tries < 400; ++tries) {
        bool ok = true, all_capped = true;
        for (size_t bi = 0; bi < set.bands.size(); ++bi) {
            const auto& m = set.bands[bi];
            for (int j = 0; j < m.size(); ++j) {
                if (m.constraint_true(j, p[bi]) > 0.0) ok = false;
                if (p[bi][j] < m.pmax[j]) all_capped = false;
            }
        }
        if (ok) break;
        if (all_capped) {
            out.feasible_start = false;
            for (size_t bi = 0; bi < set.bands.size(); ++bi) {
                const auto& m = set.bands[bi];
                for (int j = 0; j < m.size(); ++j)
                    if (m.constraint_true(j, p[bi]) > 0.0)
                        out.binding_devices.push_back(m.devices[j]);
            }
            std::ostringstream os;
            os << "power: rate requirement unreachable at maximum power for device";
            for (int j : out.binding_devices) os << " " << j;
            out.message = os.str();
            return out;
        }
        for (size_t bi = 0; bi < set.bands.size(); ++bi)
            for (int j = 0; j < set.bands[bi].size(); ++j)
                p[bi][j] = std::min(p[bi][j] * 1.25, set.bands[bi].pmax[j]);
    }

    double prev_surrogate = 0.0;
    bool have_prev = false;
    for (int it = 0; it < max_iter; ++it) {
        double surrogate = 0.0;
        for (size_t bi = 0; bi < set.bands.size(); ++bi) {
            double sv = 0.0;
            p[bi] = solve_band_subproblem(set.bands[bi], p[bi], sv);
            surrogate += sv;
        }
        CcpTraceEntry te;
        te.surrogate = surrogate;
        double worst = -std::numeric_limits<double>::infinity();
        double true_e = 0.0;
        for (size_t bi = 0; bi < set.bands.size(); ++bi) {
            const auto& m = set.bands[bi];
            true_e += m.total_energy(p[bi]);
            for (int j = 0; j < m.size(); ++j)
                worst = std::max(worst, m.constraint_true(j, p[bi]));
        }
        te.true_energy = true_e;
        te.max_violation = worst;
        out.trace.push_back(te);
        out.iterations = it + 1;
        if (have_prev) {
            const double denom = std::max(std::fabs(prev_surrogate), 1e-300);
            if (std::fabs(prev_surrogate - surrogate) / denom <= eps1) {
                out.converged = true;
                break;
            }
        }
        prev_surrogate = surrogate;
        have_prev = true;
    }

    for (size_t bi = 0; bi < set.bands.size(); ++bi) {
        const auto& m = set.bands[bi];
        for (int j = 0; j < m.size(); ++j) out.power[m.devices[j]] = p[bi][j];
    }
    return out;
}

}  // namespace sagsim
