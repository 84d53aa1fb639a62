#include "core/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sagsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void project_simplex_group(std::vector<double>& x, const std::vector<int>& group) {
    // sort-based Euclidean projection onto {y >= 0, sum y = 1}
    const int n = static_cast<int>(group.size());
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = x[group[i]];
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    int rho = 0;
    for (int i = 0; i < n; ++i) {
        cum += u[i];
        const double t = (cum - 1.0) / (i + 1);
        if (u[i] - t > 0.0) {
            rho = i + 1;
            tau = t;
        }
    }
    for (int i = 0; i < n; ++i) x[group[i]] = std::max(v[i] - tau, 0.0);
}

}  // namespace

void project_box_simplex(std::vector<double>& x, const std::vector<double>& lo,
                         const std::vector<double>& hi,
                         const std::vector<std::vector<int>>& groups) {
    for (size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    for (const auto& g : groups) project_simplex_group(x, g);
}

double gradient_max_rel_error(const std::function<double(const std::vector<double>&)>& f,
                              const std::function<void(const std::vector<double>&, std::vector<double>&)>& grad,
                              const std::vector<double>& x, double step) {
    std::vector<double> g(x.size());
    grad(x, g);
    double scale = 1e-12;
    for (double v : g) scale = std::max(scale, std::fabs(v));
    double worst = 0.0;
    std::vector<double> xp = x;
    for (size_t i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::fabs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        const double fd = (fp - fm) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - g[i]) / scale);
    }
    return worst;
}

namespace {

struct Workspace {
    const ConvexProgram& p;
    std::vector<double> grad_buf;
    std::vector<double> cgrad_buf;

    explicit Workspace(const ConvexProgram& prog)
        : p(prog), grad_buf(prog.dimension), cgrad_buf(prog.dimension) {}

    // Barrier composite phi_mu = f - mu sum ln(-g_i); +inf outside the
    // strictly feasible region.
    double phi(const std::vector<double>& x, double mu) {
        double val = p.objective(x);
        for (const auto& c : p.constraints) {
            const double gi = c.g(x);
            if (gi >= 0.0) return kInf;
            val -= mu * std::log(-gi);
        }
        return val;
    }

    void phi_grad(const std::vector<double>& x, double mu, std::vector<double>& out) {
        p.gradient(x, out);
        for (const auto& c : p.constraints) {
            const double gi = c.g(x);
            c.grad(x, cgrad_buf);
            const double w = mu / (-gi);
            for (int i = 0; i < p.dimension; ++i) out[i] += w * cgrad_buf[i];
        }
    }
};

// Move x to the strict interior of the smooth constraints by minimizing the
// squared hinge of the violations. Returns false if it cannot.
bool restore_feasibility(const ConvexProgram& p, std::vector<double>& x, double margin) {
    auto worst = [&](const std::vector<double>& y) {
        double w = -kInf;
        for (const auto& c : p.constraints) w = std::max(w, c.g(y));
        return w;
    };
    if (p.constraints.empty() || worst(x) < -margin) return true;

    std::vector<double> g(p.dimension), cg(p.dimension), cand(p.dimension);
    auto penalty = [&](const std::vector<double>& y) {
        double v = 0.0;
        for (const auto& c : p.constraints) {
            const double gi = c.g(y) + 2.0 * margin;
            if (gi > 0.0) v += gi * gi;
        }
        return v;
    };
    for (int it = 0; it < 200; ++it) {
        std::fill(g.begin(), g.end(), 0.0);
        for (const auto& c : p.constraints) {
            const double gi = c.g(x) + 2.0 * margin;
            if (gi > 0.0) {
                c.grad(x, cg);
                for (int i = 0; i < p.dimension; ++i) g[i] += 2.0 * gi * cg[i];
            }
        }
        const double base = penalty(x);
        if (base == 0.0) break;
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int i = 0; i < p.dimension; ++i) cand[i] = x[i] - step * g[i];
            project_box_simplex(cand, p.lo, p.hi, p.simplex_groups);
            if (penalty(cand) < base) {
                x = cand;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return worst(x) < -margin * 0.5;
}

}  // namespace

SolveResult solve(const ConvexProgram& p, std::vector<double> x0, const SolveOptions& opt) {
    if (static_cast<int>(x0.size()) != p.dimension)
        throw std::invalid_argument("solve: x0 dimension mismatch");
    for (int i = 0; i < p.dimension; ++i) {
        if (x0[i] < p.lo[i] - 1e-12 || x0[i] > p.hi[i] + 1e-12)
            throw std::invalid_argument("solve: x0 violates the box");
    }

    if (opt.validate_gradients) {
        const double err = gradient_max_rel_error(p.objective, p.gradient, x0);
        if (err > 1e-4)
            throw std::logic_error("solve: objective gradient fails finite-difference check");
        for (const auto& c : p.constraints) {
            const double cerr = gradient_max_rel_error(c.g, c.grad, x0);
            if (cerr > 1e-4)
                throw std::logic_error("solve: constraint gradient fails finite-difference check (" +
                                       c.name + ")");
        }
    }

    project_box_simplex(x0, p.lo, p.hi, p.simplex_groups);

    SolveResult res;
    if (!restore_feasibility(p, x0, 1e-12)) {
        res.x = std::move(x0);
        res.status = SolveStatus::InfeasibleStart;
        res.objective = p.objective(res.x);
        return res;
    }

    Workspace ws(p);
    std::vector<double> x = std::move(x0);
    std::vector<double> grad(p.dimension), cand(p.dimension), diff(p.dimension);

    const int stages = p.constraints.empty() ? 1 : opt.barrier_stages;
    bool converged = false;
    int total_steps = 0;

    // Barrier weight scaled to the objective so tiny-magnitude energies are
    // not drowned by the log terms.
    p.gradient(x, grad);
    double f_scale = std::fabs(p.objective(x));
    for (double g : grad) f_scale = std::max(f_scale, std::fabs(g));
    f_scale = std::max(f_scale, 1e-12);

    for (int stage = 0; stage < stages; ++stage) {
        const double mu = p.constraints.empty()
                              ? 0.0
                              : opt.barrier_mu0 * f_scale * std::pow(0.1, stage);
        const double stage_tol = opt.tol * std::pow(10.0, stages - 1 - stage);
        double step = 1.0;
        converged = false;

        for (int it = 0; it < opt.max_iter; ++it) {
            ws.phi_grad(x, mu, grad);

            // projected-gradient optimality measure
            for (int i = 0; i < p.dimension; ++i) cand[i] = x[i] - grad[i];
            project_box_simplex(cand, p.lo, p.hi, p.simplex_groups);
            double pg = 0.0;
            for (int i = 0; i < p.dimension; ++i) pg = std::max(pg, std::fabs(cand[i] - x[i]));
            if (pg <= stage_tol) {
                converged = true;
                break;
            }

            const double base = ws.phi(x, mu);
            step = std::min(step * 2.0, 1e6);
            bool accepted = false;
            for (int ls = 0; ls < 60; ++ls) {
                for (int i = 0; i < p.dimension; ++i) cand[i] = x[i] - step * grad[i];
                project_box_simplex(cand, p.lo, p.hi, p.simplex_groups);
                double dir_deriv = 0.0, move = 0.0;
                for (int i = 0; i < p.dimension; ++i) {
                    diff[i] = cand[i] - x[i];
                    dir_deriv += grad[i] * diff[i];
                    move = std::max(move, std::fabs(diff[i]));
                }
                if (move == 0.0) break;
                const double val = ws.phi(cand, mu);
                if (val <= base + 1e-4 * dir_deriv && val < base) {
                    x = cand;
                    accepted = true;
                    ++total_steps;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                converged = true;  // no descent step exists at line-search resolution
                break;
            }
        }
    }

    res.x = std::move(x);
    res.status = converged ? SolveStatus::Converged : SolveStatus::IterationLimit;
    res.iterations = total_steps;
    res.objective = p.objective(res.x);
    return res;
}

}  // namespace sagsim
