#include "core/deploy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/channel.hpp"

namespace sagsim {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackScale = 1e4;  // m^2 per scaled unit

double sq(double v) { return v * v; }
double sq_dist(const Vec2& a, const Vec2& b) { return sq(a.x - b.x) + sq(a.y - b.y); }

// Gain as a function of the squared horizontal distance s (altitude folded
// into h2): g0 exp(-i sqrt(h2+s)) / (h2+s), and its derivative in s.
double gain_s(double s, double h2, double absorption, double g0) {
    const double u = h2 + s;
    return g0 * std::exp(-absorption * std::sqrt(u)) / u;
}
double gain_s_deriv(double s, double h2, double absorption, double g0) {
    const double u = h2 + s;
    const double ru = std::sqrt(u);
    return -g0 * std::exp(-absorption * ru) * (absorption * ru + 2.0) / (2.0 * u * u);
}

}  // namespace

std::vector<AuxLeg> build_aux_constraints(const Scenario& s, const Decisions& dec,
                                          const LinkTable& lt) {
    (void)lt;
    std::vector<AuxLeg> legs;
    for (int j = 0; j < static_cast<int>(s.devices.size()); ++j) {
        AuxLeg leg;
        leg.j = j;
        leg.budget_s = s.devices[j].task.deadline_s;
        if (dec.beta[j] <= 0.0) {
            legs.push_back(leg);  // every lambda constraint vacuous
            continue;
        }
        leg.access = true;
        const int k = s.association[j];
        const ExecNode n = executing_node(dec, k, j);
        if (n.is_sat) {
            leg.sat = true;
            leg.sat_to = n.id;
        } else {
            if (n.id != k) {
                leg.relay = true;
                leg.relay_to = n.id;
            }
            const double share = cpu_share_of(s, dec, j);
            if (share > 0.0)
                leg.comp_const_s = s.devices[j].task.cycles_per_bit * dec.beta[j] / share;
        }
        legs.push_back(leg);
    }
    return legs;
}

double ScaModel::access_rate_hat(const AccessTerm& t, const std::vector<double>& x) const {
    double own = 0.0, interf = 0.0;
    for (const auto& tx : t.txs) {
        if (tx.q_idx < 0)
            own = tx.power * gain_s(phys(x, t.m_idx), t.h2, t.absorption, g0);
        else
            interf += tx.power * gain_s(phys(x, tx.q_idx), t.h2, t.absorption, g0);
    }
    return omega * std::log1p(own / (interf + noise)) / kLn2;
}

double ScaModel::flow_rate_hat(const FlowTerm& f, const std::vector<double>& x) const {
    const double gamma = f.gamma_num / (f.dh2 + phys(x, f.n_idx));
    return f.bandwidth * std::log1p(gamma) / kLn2;
}

double ScaModel::objective_value(const std::vector<double>& x) const {
    double q = 0.0;
    for (const auto& t : access) {
        const double r = access_rate_hat(t, x);
        q += r > 0.0 ? t.power * t.beta / r : kInf;
    }
    for (const auto& f : flows) {
        const double r = flow_rate_hat(f, x);
        q += r > 0.0 ? f.tx_power * f.flow_bits / r : kInf;
    }
    return q;
}

void ScaModel::objective_grad(const std::vector<double>& x, std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    for (const auto& t : access) {
        double own = 0.0, dgown = 0.0, interf = 0.0;
        for (const auto& tx : t.txs) {
            if (tx.q_idx < 0) {
                const double sv = phys(x, t.m_idx);
                own = tx.power * gain_s(sv, t.h2, t.absorption, g0);
                dgown = tx.power * gain_s_deriv(sv, t.h2, t.absorption, g0);
            } else {
                interf += tx.power * gain_s(phys(x, tx.q_idx), t.h2, t.absorption, g0);
            }
        }
        const double isn = interf + noise;
        const double gamma = own / isn;
        const double L = std::log1p(gamma) / kLn2;
        if (L <= 0.0) continue;
        const double dE_dL = -t.power * t.beta / (omega * L * L);
        const double dL_dgamma = 1.0 / (kLn2 * (1.0 + gamma));
        g[t.m_idx] += dE_dL * dL_dgamma * (dgown / isn) * scale[t.m_idx];
        for (const auto& tx : t.txs) {
            if (tx.q_idx < 0) continue;
            const double dI = tx.power * gain_s_deriv(phys(x, tx.q_idx), t.h2, t.absorption, g0);
            g[tx.q_idx] += dE_dL * dL_dgamma * (-own / (isn * isn)) * dI * scale[tx.q_idx];
        }
    }
    for (const auto& f : flows) {
        const double nv = phys(x, f.n_idx);
        const double gamma = f.gamma_num / (f.dh2 + nv);
        const double L = std::log1p(gamma) / kLn2;
        if (L <= 0.0) continue;
        const double dE_dL = -f.tx_power * f.flow_bits / (f.bandwidth * L * L);
        const double dL_dn = -f.gamma_num / sq(f.dh2 + nv) / (kLn2 * (1.0 + gamma));
        g[f.n_idx] += dE_dL * dL_dn * scale[f.n_idx];
    }
}

double ScaModel::access_constraint(const AccessTerm& t, const std::vector<double>& x) const {
    const double lambda = phys(x, t.lambda_idx);
    double n1 = t.req / lambda - t.anchor_logT;
    const Vec2 ok = pos_of(x, t.k);
    for (const auto& tx : t.txs) n1 += tx.taylor_coef * (sq_dist(ok, tx.pos) - tx.anchor_s);
    double interf = 0.0;
    for (const auto& tx : t.txs)
        if (tx.q_idx >= 0) interf += tx.power * gain_s(phys(x, tx.q_idx), t.h2, t.absorption, g0);
    const double n2 = -std::log2(interf + noise);
    return n1 - n2;
}

void ScaModel::access_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                      std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    const double lambda = phys(x, t.lambda_idx);
    g[t.lambda_idx] = -t.req / (lambda * lambda) * scale[t.lambda_idx];
    const Vec2 ok = pos_of(x, t.k);
    for (const auto& tx : t.txs) {
        g[2 * t.k] += tx.taylor_coef * 2.0 * (ok.x - tx.pos.x) * scale[2 * t.k];
        g[2 * t.k + 1] += tx.taylor_coef * 2.0 * (ok.y - tx.pos.y) * scale[2 * t.k + 1];
    }
    double interf = 0.0;
    for (const auto& tx : t.txs)
        if (tx.q_idx >= 0) interf += tx.power * gain_s(phys(x, tx.q_idx), t.h2, t.absorption, g0);
    const double isn = interf + noise;
    for (const auto& tx : t.txs) {
        if (tx.q_idx < 0) continue;
        const double dI = tx.power * gain_s_deriv(phys(x, tx.q_idx), t.h2, t.absorption, g0);
        // d(n1 - n2)/dq = +dI / (ln2 * isn)
        g[tx.q_idx] += dI / (kLn2 * isn) * scale[tx.q_idx];
    }
}

double ScaModel::budget_constraint(const AccessTerm& t, const std::vector<double>& x) const {
    double total = phys(x, t.lambda_idx) + t.comp_const_s;
    if (t.route_flow >= 0) total += phys(x, flows[t.route_flow].lambda_idx);
    if (t.sat_id >= 0) {
        const Vec2 ok = pos_of(x, t.k);
        total += 2.0 * std::sqrt(t.sat_dh2 + sq_dist(ok, t.sat_xy)) / light_speed;
    }
    return total - t.phi;
}

void ScaModel::budget_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                      std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    g[t.lambda_idx] = scale[t.lambda_idx];
    if (t.route_flow >= 0) g[flows[t.route_flow].lambda_idx] = scale[flows[t.route_flow].lambda_idx];
    if (t.sat_id >= 0) {
        const Vec2 ok = pos_of(x, t.k);
        const double dist = std::sqrt(t.sat_dh2 + sq_dist(ok, t.sat_xy));
        if (dist > 0.0) {
            g[2 * t.k] += 2.0 * (ok.x - t.sat_xy.x) / (light_speed * dist) * scale[2 * t.k];
            g[2 * t.k + 1] += 2.0 * (ok.y - t.sat_xy.y) / (light_speed * dist) * scale[2 * t.k + 1];
        }
    }
}

double ScaModel::flow_constraint(const FlowTerm& f, const std::vector<double>& x) const {
    return f.flow_bits / flow_rate_hat(f, x) - phys(x, f.lambda_idx);
}

void ScaModel::flow_constraint_grad(const FlowTerm& f, const std::vector<double>& x,
                                    std::vector<double>& g) const {
    std::fill(g.begin(), g.end(), 0.0);
    const double nv = phys(x, f.n_idx);
    const double gamma = f.gamma_num / (f.dh2 + nv);
    const double L = std::log1p(gamma) / kLn2;
    const double rate = f.bandwidth * L;
    const double dL_dn = -f.gamma_num / sq(f.dh2 + nv) / (kLn2 * (1.0 + gamma));
    g[f.n_idx] = -f.flow_bits / (rate * rate) * f.bandwidth * dL_dn * scale[f.n_idx];
    g[f.lambda_idx] = -scale[f.lambda_idx];
}

double ScaModel::mbound_constraint(const AccessTerm& t, const std::vector<double>& x) const {
    // linearized own squared distance must not exceed the slack
    const Vec2 ok = pos_of(x, t.k);
    const Vec2 d{anchor[t.k].x - t.own_pos.x, anchor[t.k].y - t.own_pos.y};
    const double lin = t.own_anchor_s + 2.0 * (d.x * (ok.x - anchor[t.k].x) + d.y * (ok.y - anchor[t.k].y));
    return (lin - phys(x, t.m_idx)) / kSlackScale;
}

void ScaModel::mbound_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                      std::vector<double>& g) const {
    (void)x;
    std::fill(g.begin(), g.end(), 0.0);
    const Vec2 d{anchor[t.k].x - t.own_pos.x, anchor[t.k].y - t.own_pos.y};
    g[2 * t.k] = 2.0 * d.x / kSlackScale * scale[2 * t.k];
    g[2 * t.k + 1] = 2.0 * d.y / kSlackScale * scale[2 * t.k + 1];
    g[t.m_idx] = -scale[t.m_idx] / kSlackScale;
}

double ScaModel::qbound_constraint(const QPair& qp, const std::vector<double>& x) const {
    const Vec2 ok = pos_of(x, qp.k);
    const Vec2 d{anchor[qp.k].x - qp.pos.x, anchor[qp.k].y - qp.pos.y};
    const double lin =
        qp.anchor_s + 2.0 * (d.x * (ok.x - anchor[qp.k].x) + d.y * (ok.y - anchor[qp.k].y));
    return (phys(x, qp.idx) - lin) / kSlackScale;
}

void ScaModel::qbound_constraint_grad(const QPair& qp, const std::vector<double>& x,
                                      std::vector<double>& g) const {
    (void)x;
    std::fill(g.begin(), g.end(), 0.0);
    const Vec2 d{anchor[qp.k].x - qp.pos.x, anchor[qp.k].y - qp.pos.y};
    g[2 * qp.k] = -2.0 * d.x / kSlackScale * scale[2 * qp.k];
    g[2 * qp.k + 1] = -2.0 * d.y / kSlackScale * scale[2 * qp.k + 1];
    g[qp.idx] = scale[qp.idx] / kSlackScale;
}

double ScaModel::nbound_constraint(const FlowTerm& f, const std::vector<double>& x) const {
    const Vec2 ok = pos_of(x, f.k);
    double lin;
    if (f.other_uav >= 0) {
        const Vec2 ok2 = pos_of(x, f.other_uav);
        const Vec2 dt{anchor[f.k].x - anchor[f.other_uav].x, anchor[f.k].y - anchor[f.other_uav].y};
        lin = f.anchor_s +
              2.0 * (dt.x * ((ok.x - ok2.x) - dt.x) + dt.y * ((ok.y - ok2.y) - dt.y));
    } else {
        const Vec2 d{anchor[f.k].x - f.other_anchor.x, anchor[f.k].y - f.other_anchor.y};
        lin = f.anchor_s + 2.0 * (d.x * (ok.x - anchor[f.k].x) + d.y * (ok.y - anchor[f.k].y));
    }
    return (lin - phys(x, f.n_idx)) / kSlackScale;
}

void ScaModel::nbound_constraint_grad(const FlowTerm& f, const std::vector<double>& x,
                                      std::vector<double>& g) const {
    (void)x;
    std::fill(g.begin(), g.end(), 0.0);
    if (f.other_uav >= 0) {
        const Vec2 dt{anchor[f.k].x - anchor[f.other_uav].x, anchor[f.k].y - anchor[f.other_uav].y};
        g[2 * f.k] = 2.0 * dt.x / kSlackScale * scale[2 * f.k];
        g[2 * f.k + 1] = 2.0 * dt.y / kSlackScale * scale[2 * f.k + 1];
        g[2 * f.other_uav] = -2.0 * dt.x / kSlackScale * scale[2 * f.other_uav];
        g[2 * f.other_uav + 1] = -2.0 * dt.y / kSlackScale * scale[2 * f.other_uav + 1];
    } else {
        const Vec2 d{anchor[f.k].x - f.other_anchor.x, anchor[f.k].y - f.other_anchor.y};
        g[2 * f.k] = 2.0 * d.x / kSlackScale * scale[2 * f.k];
        g[2 * f.k + 1] = 2.0 * d.y / kSlackScale * scale[2 * f.k + 1];
    }
    g[f.n_idx] = -scale[f.n_idx] / kSlackScale;
}

std::vector<double> ScaModel::exact_anchor_point() const {
    std::vector<double> x = x0;
    for (int k = 0; k < K; ++k) {
        x[2 * k] = anchor[k].x / scale[2 * k];
        x[2 * k + 1] = anchor[k].y / scale[2 * k + 1];
    }
    for (const auto& qp : qpairs) x[qp.idx] = qp.anchor_s / scale[qp.idx];
    for (const auto& f : flows) {
        x[f.n_idx] = f.anchor_s / scale[f.n_idx];
        const double r = flow_rate_hat(f, x);
        x[f.lambda_idx] = (r > 0.0 ? f.flow_bits / r : 0.0) / scale[f.lambda_idx];
    }
    for (const auto& t : access) x[t.m_idx] = t.own_anchor_s / scale[t.m_idx];
    for (const auto& t : access) {
        const double r = access_rate_hat(t, x);
        x[t.lambda_idx] = (r > 0.0 ? t.beta / r : t.phi) / scale[t.lambda_idx];
    }
    return x;
}

std::unique_ptr<ScaModel> build_sca_model(const Scenario& s, const Decisions& dec,
                                          const LinkTable& lt, double trust_m) {
    auto model = std::make_unique<ScaModel>();
    ScaModel& m = *model;
    m.K = static_cast<int>(s.uavs.size());
    m.anchor = dec.uav_pos;
    m.omega = s.phys.subband_hz;
    m.noise = s.phys.noise_w;
    m.g0 = s.phys.ref_gain;
    m.light_speed = s.phys.light_speed;

    const int J = static_cast<int>(s.devices.size());
    const int S = static_cast<int>(s.satellites.size());

    int next = 2 * m.K;
    std::vector<double> lo(next), hi(next), x0(next);
    m.scale.assign(next, 1.0);
    for (int k = 0; k < m.K; ++k) {
        const Box& b = s.uavs[k].bounds;
        lo[2 * k] = std::max(b.x_min, m.anchor[k].x - trust_m);
        hi[2 * k] = std::min(b.x_max, m.anchor[k].x + trust_m);
        lo[2 * k + 1] = std::max(b.y_min, m.anchor[k].y - trust_m);
        hi[2 * k + 1] = std::min(b.y_max, m.anchor[k].y + trust_m);
        x0[2 * k] = m.anchor[k].x;
        x0[2 * k + 1] = m.anchor[k].y;
    }
    auto add_var = [&](double l, double h, double v, double sc) {
        lo.push_back(l);
        hi.push_back(h);
        x0.push_back(v);
        m.scale.push_back(sc);
        return next++;
    };

    std::vector<std::vector<int>> flow_of_pair(m.K, std::vector<int>(m.K, -1));
    std::vector<std::vector<int>> flow_of_sat(m.K, std::vector<int>(std::max(S, 1), -1));
    auto gamma_num = [&](double p, double bw) {
        return p * s.phys.antenna_gain_tx * s.phys.antenna_gain_rx * s.phys.amp_factor /
               (s.phys.noise_temp_k * s.phys.boltzmann * bw) *
               sq(s.phys.light_speed / (4.0 * std::numbers::pi * s.phys.mm_carrier_hz));
    };
    for (int k = 0; k < m.K; ++k) {
        for (int k2 = 0; k2 < m.K; ++k2) {
            if (k2 == k) continue;
            const double flow = relay_flow_bits(s, dec, k, k2);
            if (flow <= 0.0) continue;
            ScaModel::FlowTerm f;
            f.is_sat = false;
            f.k = k;
            f.target = k2;
            f.other_uav = k2;
            f.flow_bits = flow;
            f.tx_power = s.uavs[k].tx_power_w;
            f.bandwidth = s.phys.mm_bandwidth_uav_hz;
            f.dh2 = sq(s.uavs[k].altitude_m - s.uavs[k2].altitude_m);
            f.other_anchor = m.anchor[k2];
            f.anchor_s = sq_dist(m.anchor[k], f.other_anchor);
            f.gamma_num = gamma_num(f.tx_power, f.bandwidth);
            flow_of_pair[k][k2] = static_cast<int>(m.flows.size());
            m.flows.push_back(f);
        }
        for (int si = 0; si < S; ++si) {
            const double flow = sat_flow_bits(s, dec, k, si);
            if (flow <= 0.0) continue;
            ScaModel::FlowTerm f;
            f.is_sat = true;
            f.k = k;
            f.target = si;
            f.flow_bits = flow;
            f.tx_power = s.uavs[k].tx_power_w;
            f.bandwidth = s.phys.mm_bandwidth_sat_hz;
            f.dh2 = sq(s.uavs[k].altitude_m - s.satellites[si].altitude_m);
            f.other_anchor = Vec2{s.satellites[si].x, s.satellites[si].y};
            f.anchor_s = sq_dist(m.anchor[k], f.other_anchor);
            f.gamma_num = gamma_num(f.tx_power, f.bandwidth);
            flow_of_sat[k][si] = static_cast<int>(m.flows.size());
            m.flows.push_back(f);
        }
    }

    std::vector<std::vector<int>> qidx(m.K, std::vector<int>(J, -1));
    auto q_pair = [&](int k, int dev) {
        if (qidx[k][dev] >= 0) return qidx[k][dev];
        ScaModel::QPair qp;
        qp.k = k;
        qp.dev = dev;
        qp.pos = s.devices[dev].pos;
        qp.anchor_s = sq_dist(m.anchor[k], qp.pos);
        qp.idx = add_var(0.0, kInf, std::max(qp.anchor_s * (1.0 - 1e-6) - 1e-9, 0.0), kSlackScale);
        qidx[k][dev] = qp.idx;
        m.qpairs.push_back(qp);
        return qp.idx;
    };

    for (int j = 0; j < J; ++j) {
        if (dec.beta[j] <= 0.0 || dec.band[j] < 0 || dec.power[j] <= 0.0) continue;
        const int k = s.association[j];
        const int b = dec.band[j];
        ScaModel::AccessTerm t;
        t.j = j;
        t.k = k;
        t.band = b;
        t.power = dec.power[j];
        t.beta = dec.beta[j];
        t.phi = s.devices[j].task.deadline_s;
        t.req = dec.beta[j] / m.omega;
        t.h2 = sq(s.uavs[k].altitude_m);
        t.absorption = s.phys.band_absorption(b);

        const ExecNode node = executing_node(dec, k, j);
        if (node.is_sat) {
            t.sat_id = node.id;
            t.route_flow = flow_of_sat[k][node.id];
            t.sat_dh2 = sq(s.uavs[k].altitude_m - s.satellites[node.id].altitude_m);
            t.sat_xy = Vec2{s.satellites[node.id].x, s.satellites[node.id].y};
        } else {
            if (node.id != k) t.route_flow = flow_of_pair[k][node.id];
            const double share = cpu_share_of(s, dec, j);
            t.comp_const_s =
                share > 0.0 ? s.devices[j].task.cycles_per_bit * dec.beta[j] / share : kInf;
        }

        double t_anchor = m.noise;
        for (int i = 0; i < J; ++i) {
            const bool own = i == j;
            if (!own) {
                if (dec.band[i] != b || !dec.transmits(i)) continue;
                if (s.association[i] == k && !s.phys.literal_interference) continue;
            }
            ScaModel::Tx tx;
            tx.dev = i;
            tx.power = dec.power[i];
            tx.pos = s.devices[i].pos;
            tx.anchor_s = sq_dist(m.anchor[k], tx.pos);
            tx.q_idx = own ? -1 : q_pair(k, i);
            t_anchor += tx.power * gain_s(tx.anchor_s, t.h2, t.absorption, m.g0);
            if (own) {
                t.own_anchor_s = tx.anchor_s;
                t.own_pos = tx.pos;
            }
            t.txs.push_back(tx);
        }
        t.anchor_logT = std::log2(t_anchor);
        for (auto& tx : t.txs)
            tx.taylor_coef =
                -tx.power * gain_s_deriv(tx.anchor_s, t.h2, t.absorption, m.g0) / (kLn2 * t_anchor);

        t.m_idx = add_var(0.0, kInf, t.own_anchor_s * (1.0 + 1e-6) + 1e-9, kSlackScale);
        t.lambda_idx = add_var(1e-12, t.phi, t.phi * 0.5, 1.0);
        m.access.push_back(t);
    }

    for (auto& f : m.flows) {
        f.n_idx = add_var(0.0, kInf, f.anchor_s * (1.0 + 1e-6) + 1e-9, kSlackScale);
        f.lambda_idx = add_var(1e-15, 1e9, 1.0, 1.0);
    }

    m.dim = next;
    m.x0 = std::move(x0);
    for (int i = 0; i < m.dim; ++i) {
        lo[i] /= m.scale[i];
        if (hi[i] != kInf) hi[i] /= m.scale[i];
        m.x0[i] /= m.scale[i];
    }

    // strict initial lambdas, from the surrogate rates at the initial slacks
    for (auto& f : m.flows) {
        const double r = m.flow_rate_hat(f, m.x0);
        m.x0[f.lambda_idx] = std::max(f.flow_bits / r * (1.0 + 1e-4), 1e-12) / m.scale[f.lambda_idx];
    }
    for (auto& t : m.access) {
        const double r = m.access_rate_hat(t, m.x0);
        const double lam = r > 0.0 ? t.beta / r * (1.0 + 1e-4) : t.phi;
        m.x0[t.lambda_idx] = std::min(lam, t.phi * (1.0 - 1e-9)) / m.scale[t.lambda_idx];
    }

    m.obj_norm = std::max(m.objective_value(m.x0), 1e-300);

    ScaModel* mp = model.get();
    ConvexProgram& prog = m.program;
    prog.dimension = m.dim;
    prog.lo = std::move(lo);
    prog.hi = std::move(hi);
    prog.objective = [mp](const std::vector<double>& x) {
        return mp->objective_value(x) / mp->obj_norm;
    };
    prog.gradient = [mp](const std::vector<double>& x, std::vector<double>& g) {
        mp->objective_grad(x, g);
        for (auto& gi : g) gi /= mp->obj_norm;
    };
    for (size_t i = 0; i < m.access.size(); ++i) {
        ConvexProgram::Constraint c;
        c.name = "access_dc[" + std::to_string(m.access[i].j) + "]";
        c.g = [mp, i](const std::vector<double>& x) {
            return mp->access_constraint(mp->access[i], x);
        };
        c.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->access_constraint_grad(mp->access[i], x, g);
        };
        prog.constraints.push_back(std::move(c));

        ConvexProgram::Constraint cb;
        cb.name = "budget[" + std::to_string(m.access[i].j) + "]";
        cb.g = [mp, i](const std::vector<double>& x) {
            return mp->budget_constraint(mp->access[i], x);
        };
        cb.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->budget_constraint_grad(mp->access[i], x, g);
        };
        prog.constraints.push_back(std::move(cb));

        ConvexProgram::Constraint cm;
        cm.name = "own_dist[" + std::to_string(m.access[i].j) + "]";
        cm.g = [mp, i](const std::vector<double>& x) {
            return mp->mbound_constraint(mp->access[i], x);
        };
        cm.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->mbound_constraint_grad(mp->access[i], x, g);
        };
        prog.constraints.push_back(std::move(cm));
    }
    for (size_t i = 0; i < m.qpairs.size(); ++i) {
        ConvexProgram::Constraint c;
        c.name = "itf_dist[" + std::to_string(i) + "]";
        c.g = [mp, i](const std::vector<double>& x) {
            return mp->qbound_constraint(mp->qpairs[i], x);
        };
        c.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->qbound_constraint_grad(mp->qpairs[i], x, g);
        };
        prog.constraints.push_back(std::move(c));
    }
    for (size_t i = 0; i < m.flows.size(); ++i) {
        ConvexProgram::Constraint c;
        c.name = "flow_rate[" + std::to_string(i) + "]";
        c.g = [mp, i](const std::vector<double>& x) {
            return mp->flow_constraint(mp->flows[i], x);
        };
        c.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->flow_constraint_grad(mp->flows[i], x, g);
        };
        prog.constraints.push_back(std::move(c));

        ConvexProgram::Constraint cn;
        cn.name = "flow_dist[" + std::to_string(i) + "]";
        cn.g = [mp, i](const std::vector<double>& x) {
            return mp->nbound_constraint(mp->flows[i], x);
        };
        cn.grad = [mp, i](const std::vector<double>& x, std::vector<double>& g) {
            mp->nbound_constraint_grad(mp->flows[i], x, g);
        };
        prog.constraints.push_back(std::move(cn));
    }
    return model;
}

double true_txpart_q(const Scenario& s, const Decisions& dec, const LinkTable& lt) {
    double q = 0.0;
    for (int j = 0; j < static_cast<int>(s.devices.size()); ++j)
        q += tx_cost(dec.beta[j], lt.access_rate[j], dec.power[j]).energy_j;
    const int K = static_cast<int>(s.uavs.size());
    for (int k = 0; k < K; ++k) {
        for (int k2 = 0; k2 < K; ++k2)
            if (k2 != k) q += relay_cost(s, dec, lt, k, k2).energy_j;
        for (int si = 0; si < static_cast<int>(s.satellites.size()); ++si)
            q += sat_cost(s, dec, lt, k, si).energy_j;
    }
    return q;
}

DeployResult solve_deployment(const Scenario& s, const Decisions& dec, double eps2, int max_iter) {
    DeployResult out;
    Decisions cur = dec;
    out.positions = cur.uav_pos;

    CostReport rep = objective(s, cur);
    double best_q = rep.objective_q_j;
    out.true_q_trace.push_back(best_q);

    double trust = s.config.trust_region_m;
    double prev_qhat = kInf;
    bool first = true;

    for (int it = 0; it < max_iter; ++it) {
        const LinkTable lt = build_link_table(s, cur);
        auto model = build_sca_model(s, cur, lt, trust);
        if (model->empty()) {
            out.converged = true;
            break;
        }
        if (first) {
            prev_qhat = model->objective_value(model->x0);
            first = false;
        }

        SolveOptions opt;
        opt.tol = 1e-7;
        opt.max_iter = 250;
        SolveResult res = solve(model->program, model->x0, opt);
        if (res.status == SolveStatus::InfeasibleStart) {
            out.stalled = true;
            break;
        }
        std::vector<Vec2> cand_pos(model->K);
        for (int k = 0; k < model->K; ++k) cand_pos[k] = model->pos_of(res.x, k);

        Decisions cand = cur;
        cand.uav_pos = cand_pos;
        const double cand_q = objective(s, cand).objective_q_j;
        if (cand_q > best_q * (1.0 + 1e-12)) {
            trust *= 0.5;
            if (trust < 1.0) {
                out.stalled = true;
                break;
            }
            continue;  // re-solve with a smaller trust region
        }

        cur = std::move(cand);
        best_q = std::min(best_q, cand_q);
        out.positions = cur.uav_pos;
        out.iterations = it + 1;
        const double qhat = model->objective_value(res.x);
        out.qhat_trace.push_back(qhat);
        out.true_q_trace.push_back(cand_q);

        const double denom = std::max(std::fabs(prev_qhat), 1e-300);
        if (std::fabs(prev_qhat - qhat) / denom <= eps2) {
            out.converged = true;
            break;
        }
        prev_qhat = qhat;
    }
    if (out.iterations == 0 && !out.stalled) out.converged = true;
    return out;
}

}  // namespace sagsim
