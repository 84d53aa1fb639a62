#pragma once

#include <memory>
#include <vector>

#include "core/convex.hpp"
#include "core/cost.hpp"

namespace sagsim {

// Delay decomposition of one device for the placement subproblem: which
// auxiliary legs are active and what stays constant while positions move.
struct AuxLeg {
    int j = -1;
    bool access = false;  // lambda for the uplink leg
    bool relay = false;   // lambda for a UAV->UAV leg
    int relay_to = -1;
    bool sat = false;  // lambda for a UAV->satellite leg
    int sat_to = -1;
    double comp_const_s = 0.0;  // frozen compute delay at the executing UAV
    double budget_s = 0.0;      // the device deadline
};
std::vector<AuxLeg> build_aux_constraints(const Scenario& s, const Decisions& dec,
                                          const LinkTable& lt);

// Convexified placement subproblem anchored at the current positions.
// Variables: UAV positions, per-leg delay auxiliaries, and squared
// horizontal-distance slacks carrying the Taylor surrogates. Slack variables
// are scaled internally so the projected-gradient kernel sees O(1)
// magnitudes; every vector exposed here is in the scaled coordinates.
struct ScaModel {
    int K = 0;
    int dim = 0;
    std::vector<Vec2> anchor;
    double omega = 0.0, noise = 0.0, g0 = 0.0, light_speed = 1.0;

    struct Tx {  // one transmitter observed at a receiving UAV on some band
        int dev = -1;
        double power = 0.0;
        Vec2 pos;
        double anchor_s = 0.0;     // squared horizontal distance at the anchor
        double taylor_coef = 0.0;  // d(-log2 T)/ds at the anchor, >= 0
        int q_idx = -1;            // interference slack var, -1 for the own signal
    };
    struct AccessTerm {
        int j = -1, k = -1, band = -1;
        double power = 0.0, beta = 0.0, phi = 0.0;
        double req = 0.0;  // beta / omega
        double comp_const_s = 0.0;
        int route_flow = -1;  // index into flows, -1 when computing at the serving UAV
        int sat_id = -1;      // adds the o-dependent propagation leg
        double sat_dh2 = 0.0;
        Vec2 sat_xy;
        int lambda_idx = -1;
        int m_idx = -1;  // own squared-distance slack
        Vec2 own_pos;
        double own_anchor_s = 0.0;
        double anchor_logT = 0.0;
        double h2 = 0.0;
        double absorption = 0.0;
        std::vector<Tx> txs;
    };
    struct FlowTerm {
        bool is_sat = false;
        int k = -1, target = -1;
        double flow_bits = 0.0, tx_power = 0.0, bandwidth = 0.0;
        double gamma_num = 0.0;  // Gamma = gamma_num / (dh2 + n)
        double dh2 = 0.0;
        Vec2 other_anchor;   // other endpoint (UAV anchor or satellite ground point)
        int other_uav = -1;  // >= 0 when the other endpoint moves with o
        double anchor_s = 0.0;
        int lambda_idx = -1;
        int n_idx = -1;
    };
    struct QPair {  // interference slack: transmitter dev seen at UAV k
        int k = -1, dev = -1;
        Vec2 pos;
        double anchor_s = 0.0;
        int idx = -1;
    };
    std::vector<AccessTerm> access;
    std::vector<FlowTerm> flows;
    std::vector<QPair> qpairs;

    std::vector<double> scale;  // scaled_x[i] * scale[i] = physical value
    double obj_norm = 1.0;
    ConvexProgram program;
    std::vector<double> x0;

    double phys(const std::vector<double>& x, int i) const { return x[i] * scale[i]; }
    Vec2 pos_of(const std::vector<double>& x, int k) const {
        return {phys(x, 2 * k), phys(x, 2 * k + 1)};
    }

    double objective_value(const std::vector<double>& x) const;  // un-normalized, J
    void objective_grad(const std::vector<double>& x, std::vector<double>& g) const;
    double access_rate_hat(const AccessTerm& t, const std::vector<double>& x) const;
    double flow_rate_hat(const FlowTerm& f, const std::vector<double>& x) const;

    double access_constraint(const AccessTerm& t, const std::vector<double>& x) const;
    void access_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                std::vector<double>& g) const;
    double budget_constraint(const AccessTerm& t, const std::vector<double>& x) const;
    void budget_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                std::vector<double>& g) const;
    double flow_constraint(const FlowTerm& f, const std::vector<double>& x) const;
    void flow_constraint_grad(const FlowTerm& f, const std::vector<double>& x,
                              std::vector<double>& g) const;
    double mbound_constraint(const AccessTerm& t, const std::vector<double>& x) const;
    void mbound_constraint_grad(const AccessTerm& t, const std::vector<double>& x,
                                std::vector<double>& g) const;
    double qbound_constraint(const QPair& qp, const std::vector<double>& x) const;
    void qbound_constraint_grad(const QPair& qp, const std::vector<double>& x,
                                std::vector<double>& g) const;
    double nbound_constraint(const FlowTerm& f, const std::vector<double>& x) const;
    void nbound_constraint_grad(const FlowTerm& f, const std::vector<double>& x,
                                std::vector<double>& g) const;

    // Point whose slacks sit exactly on their anchor values (tangency hook).
    std::vector<double> exact_anchor_point() const;

    bool empty() const { return access.empty() && flows.empty(); }
};

std::unique_ptr<ScaModel> build_sca_model(const Scenario& s, const Decisions& dec,
                                          const LinkTable& lt, double trust_m);

// True position-dependent part of the objective (device uplink energies plus
// backhaul energies), for tangency and descent checks.
double true_txpart_q(const Scenario& s, const Decisions& dec, const LinkTable& lt);

struct DeployResult {
    std::vector<Vec2> positions;
    int iterations = 0;
    bool converged = false;
    bool stalled = false;
    std::vector<double> qhat_trace;
    std::vector<double> true_q_trace;  // full objective at each accepted anchor
};

DeployResult solve_deployment(const Scenario& s, const Decisions& dec, double eps2, int max_iter);

}  // namespace sagsim
