#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sagsim {

// Small smooth constrained minimization instance, the common substrate of
// the per-phase subproblems. Dimensions stay in the low hundreds, so a
// projected-gradient method with a log barrier is deliberate: simple,
// deterministic, no external solver.
struct ConvexProgram {
    int dimension = 0;
    std::function<double(const std::vector<double>&)> objective;
    std::function<void(const std::vector<double>&, std::vector<double>&)> gradient;

    struct Constraint {
        // g(x) <= 0, smooth, with gradient
        std::function<double(const std::vector<double>&)> g;
        std::function<void(const std::vector<double>&, std::vector<double>&)> grad;
        std::string name;
    };
    std::vector<Constraint> constraints;

    std::vector<double> lo, hi;  // box; +-inf entries allowed
    // Index groups constrained to the probability simplex (nonnegative,
    // summing to 1). Group coordinates must carry a [0,1]-compatible box.
    std::vector<std::vector<int>> simplex_groups;
};

enum class SolveStatus { Converged, IterationLimit, InfeasibleStart };

struct SolveResult {
    std::vector<double> x;
    SolveStatus status = SolveStatus::Converged;
    int iterations = 0;  // accepted projected-gradient steps, all stages
    double objective = 0.0;
};

struct SolveOptions {
    double tol = 1e-7;
    int max_iter = 400;       // per barrier stage
    int barrier_stages = 5;   // barrier weight shrinks x0.1 per stage
    double barrier_mu0 = 1e-2;
    bool validate_gradients = false;  // central finite differences at x0
};

// Projection onto box then per-group simplex; idempotent.
void project_box_simplex(std::vector<double>& x, const std::vector<double>& lo,
                         const std::vector<double>& hi,
                         const std::vector<std::vector<int>>& groups);

SolveResult solve(const ConvexProgram& p, std::vector<double> x0, const SolveOptions& opt = {});

// Max relative error between an analytic gradient and central differences
// (step 1e-6), normalized by the gradient scale.
double gradient_max_rel_error(const std::function<double(const std::vector<double>&)>& f,
                              const std::function<void(const std::vector<double>&, std::vector<double>&)>& grad,
                              const std::vector<double>& x, double step = 1e-6);

}  // namespace sagsim
